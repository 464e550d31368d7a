#include "tomllite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hopfext::toml {

const std::string& Table::get_str(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw std::runtime_error("missing key '" + k + "'");
    if (it->second.kind != Value::Kind::String)
        throw std::runtime_error("key '" + k + "' is not a string");
    return it->second.str;
}

long long Table::get_int(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw std::runtime_error("missing key '" + k + "'");
    if (it->second.kind != Value::Kind::Int)
        throw std::runtime_error("key '" + k + "' is not an integer");
    return it->second.num;
}

namespace {

struct Cursor {
    const std::string& line;
    int lineno;
    size_t i = 0;
    void skip_ws() {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    }
    bool done() {
        skip_ws();
        return i >= line.size() || line[i] == '#';
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lineno, (int)i + 1); }
};

std::string parse_key(Cursor& c) {
    c.skip_ws();
    std::string k;
    while (c.i < c.line.size() &&
           (std::isalnum((unsigned char)c.line[c.i]) || c.line[c.i] == '_' ||
            c.line[c.i] == '.' || c.line[c.i] == '-'))
        k += c.line[c.i++];
    if (k.empty()) c.fail("expected key");
    return k;
}

Value parse_value(Cursor& c) {
    c.skip_ws();
    if (c.i >= c.line.size()) c.fail("expected value");
    Value v;
    v.line = c.lineno;
    char ch = c.line[c.i];
    if (ch == '"') {
        ++c.i;
        std::string s;
        while (c.i < c.line.size() && c.line[c.i] != '"') {
            if (c.line[c.i] == '\\' && c.i + 1 < c.line.size()) {
                ++c.i;
                char e = c.line[c.i];
                s += (e == 'n' ? '\n' : e == 't' ? '\t' : e);
            } else {
                s += c.line[c.i];
            }
            ++c.i;
        }
        if (c.i >= c.line.size()) c.fail("unterminated string");
        ++c.i;
        v.kind = Value::Kind::String;
        v.str = s;
        return v;
    }
    if (ch == '-' || ch == '+' || std::isdigit((unsigned char)ch)) {
        std::string num;
        num += ch;
        ++c.i;
        while (c.i < c.line.size() && std::isdigit((unsigned char)c.line[c.i])) num += c.line[c.i++];
        v.kind = Value::Kind::Int;
        try {
            v.num = std::stoll(num);
        } catch (...) {
            c.fail("malformed integer");
        }
        return v;
    }
    c.fail("unsupported value (expected string or integer)");
}

}  // namespace

Table parse(const std::string& text) {
    Table root;
    Table* current = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Cursor c{line, lineno};
        if (c.done()) continue;
        c.skip_ws();
        if (line[c.i] == '[') {
            bool array = c.i + 1 < line.size() && line[c.i + 1] == '[';
            c.i += array ? 2 : 1;
            std::string name = parse_key(c);
            c.skip_ws();
            if (array) {
                if (c.i + 1 >= line.size() + 1 || line.compare(c.i, 2, "]]") != 0)
                    c.fail("expected ']]'");
                c.i += 2;
                root.arrays[name].emplace_back();
                current = &root.arrays[name].back();
            } else {
                if (c.i >= line.size() || line[c.i] != ']') c.fail("expected ']'");
                ++c.i;
                current = &root.tables[name];
            }
            if (!c.done()) c.fail("trailing characters after table header");
            continue;
        }
        std::string key = parse_key(c);
        c.skip_ws();
        if (c.i >= line.size() || line[c.i] != '=') c.fail("expected '='");
        ++c.i;
        Value v = parse_value(c);
        if (!c.done()) c.fail("trailing characters after value");
        if (current->values.count(key)) c.fail("duplicate key '" + key + "'");
        current->values[key] = v;
    }
    return root;
}

Table parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

}  // namespace hopfext::toml
