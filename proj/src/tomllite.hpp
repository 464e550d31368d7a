#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfext::toml {

// Small TOML subset: [table] and [[array-of-table]] headers, key = value
// pairs with dotted keys, string / integer values, # comments.  Enough for
// the presentation, seed and extension file formats; reports line:column on
// errors.

struct Value {
    enum class Kind { String, Int } kind = Kind::String;
    std::string str;
    long long num = 0;
    int line = 0;
};

struct Table {
    std::map<std::string, Value> values;                      // dotted keys flattened
    std::map<std::string, std::vector<Table>> arrays;         // [[name]]
    std::map<std::string, Table> tables;                      // [name]

    bool has(const std::string& k) const { return values.count(k) != 0; }
    const std::string& get_str(const std::string& k) const;
    long long get_int(const std::string& k) const;
};

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line(line), col(col) {}
};

Table parse(const std::string& text);
Table parse_file(const std::string& path);

}  // namespace hopfext::toml
