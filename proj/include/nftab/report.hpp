#pragma once

// Deterministic report documents for the CLI: ordered key/value sections,
// rendered either as human tables or as JSON.  Reals are always formatted
// with 12 significant digits so identical inputs serialize byte-identically.

#include <cstdio>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nftab/arith.hpp"

namespace nftab {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class Doc {
 public:
  using Value = std::variant<i64, double, bool, std::string, std::shared_ptr<Doc>,
                             std::shared_ptr<std::vector<Doc>>>;

  Doc& put(const std::string& key, i64 v) { return emplace(key, Value(v)); }
  Doc& put(const std::string& key, int v) { return emplace(key, Value(i64(v))); }
  Doc& put(const std::string& key, double v) { return emplace(key, Value(v)); }
  Doc& put(const std::string& key, bool v) { return emplace(key, Value(v)); }
  Doc& put(const std::string& key, const char* v) { return emplace(key, Value(std::string(v))); }
  Doc& put(const std::string& key, const std::string& v) { return emplace(key, Value(v)); }

  Doc& child(const std::string& key) {
    auto p = std::make_shared<Doc>();
    emplace(key, Value(p));
    return *p;
  }

  std::vector<Doc>& array(const std::string& key) {
    auto p = std::make_shared<std::vector<Doc>>();
    emplace(key, Value(p));
    return *p;
  }

  std::string to_json() const {
    std::string out;
    write_json(out);
    return out;
  }

  std::string to_text(int indent = 0) const {
    std::string out;
    write_text(out, indent);
    return out;
  }

 private:
  Doc& emplace(const std::string& key, Value v) {
    entries_.emplace_back(key, std::move(v));
    return *this;
  }

  static void json_escape(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
      }
    }
    out += '"';
  }

  void write_json(std::string& out) const {
    out += '{';
    bool first = true;
    for (auto& [k, v] : entries_) {
      if (!first) out += ',';
      first = false;
      json_escape(out, k);
      out += ':';
      if (std::holds_alternative<i64>(v)) {
        out += std::to_string(std::get<i64>(v));
      } else if (std::holds_alternative<double>(v)) {
        out += format_real(std::get<double>(v));
      } else if (std::holds_alternative<bool>(v)) {
        out += std::get<bool>(v) ? "true" : "false";
      } else if (std::holds_alternative<std::string>(v)) {
        json_escape(out, std::get<std::string>(v));
      } else if (std::holds_alternative<std::shared_ptr<Doc>>(v)) {
        std::get<std::shared_ptr<Doc>>(v)->write_json(out);
      } else {
        out += '[';
        auto& arr = *std::get<std::shared_ptr<std::vector<Doc>>>(v);
        for (size_t i = 0; i < arr.size(); ++i) {
          if (i) out += ',';
          arr[i].write_json(out);
        }
        out += ']';
      }
    }
    out += '}';
  }

  void write_text(std::string& out, int indent) const {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    for (auto& [k, v] : entries_) {
      if (std::holds_alternative<std::shared_ptr<Doc>>(v)) {
        out += pad + k + ":\n";
        std::get<std::shared_ptr<Doc>>(v)->write_text(out, indent + 1);
      } else if (std::holds_alternative<std::shared_ptr<std::vector<Doc>>>(v)) {
        auto& arr = *std::get<std::shared_ptr<std::vector<Doc>>>(v);
        out += pad + k + ":\n";
        for (auto& d : arr) {
          out += pad + "  -\n";
          d.write_text(out, indent + 2);
        }
      } else {
        out += pad + k + " = ";
        if (std::holds_alternative<i64>(v)) {
          out += std::to_string(std::get<i64>(v));
        } else if (std::holds_alternative<double>(v)) {
          out += format_real(std::get<double>(v));
        } else if (std::holds_alternative<bool>(v)) {
          out += std::get<bool>(v) ? "true" : "false";
        } else {
          out += std::get<std::string>(v);
        }
        out += '\n';
      }
    }
  }

  std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace nftab
