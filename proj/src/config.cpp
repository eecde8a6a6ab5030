#include "fcg/config.hpp"

#include "fcg/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace fcg::config {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Block document() {
        Block b = members('\0');
        skip_space();
        if (!eof()) fail("unexpected '" + std::string(1, peek()) + "'");
        return b;
    }

private:
    // members until `close` ('}' for blocks, '\0' for end of input)
    Block members(char close) {
        Block b;
        for (;;) {
            skip_space();
            if (close == '\0' ? eof() : (!eof() && peek() == close)) break;
            if (eof()) fail("unexpected end of input, expected '}'");
            b.entries.push_back(entry());
            skip_space();
            if (!eof() && peek() == ',') advance();
        }
        return b;
    }

    Entry entry() {
        Entry e;
        e.line = line_;
        e.column = column_;
        e.key = identifier();
        skip_space();
        if (!eof() && peek() == '"') {
            e.label = string_literal();
            skip_space();
            if (eof() || peek() != '{') fail("expected '{' after block label");
        }
        if (!eof() && peek() == '{') {
            e.value = value();
            return e;
        }
        if (eof() || peek() != '=') fail("expected '=' or '{' after '" + e.key + "'");
        advance();
        skip_space();
        e.value = value();
        return e;
    }

    Value value() {
        skip_space();
        Value v;
        v.line = line_;
        v.column = column_;
        if (eof()) fail("expected a value");
        const char c = peek();
        if (c == '"') {
            v.data = string_literal();
        } else if (c == '{') {
            advance();
            Block b = members('}');
            advance();
            v.data = std::move(b);
        } else if (c == '[') {
            advance();
            List items;
            for (;;) {
                skip_space();
                if (eof()) fail("unexpected end of input, expected ']'");
                if (peek() == ']') break;
                items.push_back(value());
                skip_space();
                if (!eof() && peek() == ',') {
                    advance();
                    continue;
                }
                skip_space();
                if (eof() || peek() != ']') fail("expected ',' or ']' in list");
            }
            advance();
            v.data = std::move(items);
        } else if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            v.data = number();
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t l = line_, col = column_;
            const std::string word = identifier();
            if (word == "true") v.data = true;
            else if (word == "false") v.data = false;
            else throw ParseError("unexpected identifier '" + word + "' where a value was expected", l, col);
        } else {
            fail("unexpected '" + std::string(1, c) + "' where a value was expected");
        }
        return v;
    }

    std::string identifier() {
        if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected a key");
        std::string out;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) out += advance();
        return out;
    }

    std::string string_literal() {
        const std::size_t l = line_, col = column_;
        advance(); // opening quote
        std::string out;
        for (;;) {
            if (eof() || peek() == '\n') throw ParseError("unterminated string", l, col);
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                if (eof()) throw ParseError("unterminated string", l, col);
                const char esc = advance();
                switch (esc) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                default: fail(std::string("unknown escape '\\") + esc + "'");
                }
                continue;
            }
            out += c;
        }
        return out;
    }

    double number() {
        const std::size_t l = line_, col = column_;
        std::string token;
        if (peek() == '-' || peek() == '+') token += advance();
        bool digits = false;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            token += advance();
            digits = true;
        }
        if (!eof() && peek() == '.') {
            token += advance();
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                token += advance();
                digits = true;
            }
        }
        if (!digits) throw ParseError("malformed number '" + token + "'", l, col);
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            token += advance();
            if (!eof() && (peek() == '-' || peek() == '+')) token += advance();
            bool exp_digits = false;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                token += advance();
                exp_digits = true;
            }
            if (!exp_digits) throw ParseError("malformed exponent in '" + token + "'", l, col);
        }
        if (!eof() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            throw ParseError("malformed number '" + token + peek() + "'", l, col);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(v))
            throw ParseError("malformed number '" + token + "'", l, col);
        return v;
    }

    void skip_space() {
        while (!eof()) {
            const char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }

    [[nodiscard]] bool eof() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return text_[pos_]; }
    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

std::string number_text(double v) {
    char buf[40];
    for (int precision : {15, 16, 17}) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

void write_value(const Value& v, std::string& out);

void write_inline_block(const Block& b, std::string& out) {
    if (b.entries.empty()) {
        out += "{}";
        return;
    }
    out += "{ ";
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
        const auto& e = b.entries[i];
        if (i) out += ", ";
        out += e.key;
        if (e.label) {
            out += ' ' + quote(*e.label) + ' ';
        } else {
            out += " = ";
        }
        write_value(e.value, out);
    }
    out += " }";
}

void write_value(const Value& v, std::string& out) {
    if (const auto* s = std::get_if<std::string>(&v.data)) {
        out += quote(*s);
    } else if (const auto* d = std::get_if<double>(&v.data)) {
        out += number_text(*d);
    } else if (const auto* b = std::get_if<bool>(&v.data)) {
        out += *b ? "true" : "false";
    } else if (const auto* l = std::get_if<List>(&v.data)) {
        out += '[';
        for (std::size_t i = 0; i < l->size(); ++i) {
            if (i) out += ", ";
            write_value((*l)[i], out);
        }
        out += ']';
    } else {
        write_inline_block(std::get<Block>(v.data), out);
    }
}

} // namespace

const char* Value::type_name() const {
    switch (data.index()) {
    case 0: return "string";
    case 1: return "number";
    case 2: return "boolean";
    case 3: return "list";
    default: return "block";
    }
}

Block parse(std::string_view text) { return Parser(text).document(); }

std::string serialize(const Block& block) {
    std::string out;
    for (const auto& e : block.entries) {
        out += e.key;
        if (e.label) out += ' ' + quote(*e.label);
        if (e.value.is_block()) {
            out += ' ';
        } else {
            if (e.label) throw InvalidArgument("labeled entry '" + e.key + "' must hold a block");
            out += " = ";
        }
        write_value(e.value, out);
        out += '\n';
    }
    return out;
}

bool equal(const Value& a, const Value& b) {
    if (a.data.index() != b.data.index()) return false;
    if (const auto* l = std::get_if<List>(&a.data)) {
        const auto& r = std::get<List>(b.data);
        if (l->size() != r.size()) return false;
        for (std::size_t i = 0; i < l->size(); ++i)
            if (!equal((*l)[i], r[i])) return false;
        return true;
    }
    if (const auto* blk = std::get_if<Block>(&a.data)) return equal(*blk, std::get<Block>(b.data));
    if (const auto* s = std::get_if<std::string>(&a.data)) return *s == std::get<std::string>(b.data);
    if (const auto* d = std::get_if<double>(&a.data)) return *d == std::get<double>(b.data);
    return std::get<bool>(a.data) == std::get<bool>(b.data);
}

bool equal(const Block& a, const Block& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto& x = a.entries[i];
        const auto& y = b.entries[i];
        if (x.key != y.key || x.label != y.label || !equal(x.value, y.value)) return false;
    }
    return true;
}

} // namespace fcg::config
