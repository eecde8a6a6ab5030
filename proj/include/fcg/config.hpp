#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Minimal key-value tree used by scenario files:
//
//   utility { kind = "power_discounted", alpha = 0.5 }
//   schedule "A" { pay = [{amount = 1000, t = 0}] }
//
// The full grammar lives in docs/config-grammar.md.
namespace fcg::config {

struct Value;
struct Entry;

using List = std::vector<Value>;

struct Block {
    std::vector<Entry> entries;
};

struct Value {
    std::variant<std::string, double, bool, List, Block> data;
    std::size_t line = 0;
    std::size_t column = 0;

    [[nodiscard]] bool is_string() const { return std::holds_alternative<std::string>(data); }
    [[nodiscard]] bool is_number() const { return std::holds_alternative<double>(data); }
    [[nodiscard]] bool is_bool() const { return std::holds_alternative<bool>(data); }
    [[nodiscard]] bool is_list() const { return std::holds_alternative<List>(data); }
    [[nodiscard]] bool is_block() const { return std::holds_alternative<Block>(data); }

    [[nodiscard]] const char* type_name() const;
};

struct Entry {
    std::string key;
    std::optional<std::string> label; // schedule "A" { ... }
    Value value;
    std::size_t line = 0;
    std::size_t column = 0;
};

// Throws ParseError with 1-based line/column.
[[nodiscard]] Block parse(std::string_view text);

// Canonical text; parse(serialize(b)) is structurally equal to b.
[[nodiscard]] std::string serialize(const Block& block);

// Equality ignoring source positions.
[[nodiscard]] bool equal(const Value& a, const Value& b);
[[nodiscard]] bool equal(const Block& a, const Block& b);

} // namespace fcg::config
