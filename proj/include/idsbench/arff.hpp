#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idsbench/error.hpp"

namespace idsbench {

enum class AttrKind { numeric, nominal };

struct ArffAttribute {
  std::string name;
  AttrKind kind = AttrKind::numeric;
  std::vector<std::string> values;  // nominal only, declaration order

  bool operator==(const ArffAttribute&) const = default;
};

/// One cell: a finite number, an index into the owning attribute's nominal
/// list, or the missing marker.
class ArffValue {
 public:
  enum class Kind : std::uint8_t { number, nominal, missing };

  static ArffValue number(double v) {
    ArffValue a;
    a.kind_ = Kind::number;
    a.number_ = v;
    return a;
  }
  static ArffValue nominal(std::int32_t index) {
    ArffValue a;
    a.kind_ = Kind::nominal;
    a.index_ = index;
    return a;
  }
  static ArffValue missing() { return ArffValue{}; }

  Kind kind() const { return kind_; }
  bool is_missing() const { return kind_ == Kind::missing; }
  double as_number() const { return number_; }
  std::int32_t nominal_index() const { return index_; }

  bool operator==(const ArffValue& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::number: return number_ == o.number_;
      case Kind::nominal: return index_ == o.index_;
      case Kind::missing: return true;
    }
    return false;
  }

 private:
  Kind kind_ = Kind::missing;
  double number_ = 0.0;
  std::int32_t index_ = 0;
};

struct ArffDocument {
  std::string relation_name;
  std::vector<ArffAttribute> attributes;
  std::vector<std::vector<ArffValue>> instances;

  bool operator==(const ArffDocument&) const = default;

  std::size_t attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
      if (attributes[i].name == name) return i;
    return attributes.size();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

/// Strip one layer of matching single or double quotes.
inline std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') &&
      s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

/// Split on commas outside quotes, trimming each piece.
inline std::vector<std::string_view> split_csv(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  char quote = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && quote != 0) {
      if (s[i] == quote) quote = 0;
      continue;
    }
    if (i < s.size() && (s[i] == '\'' || s[i] == '"')) {
      quote = s[i];
      continue;
    }
    if (i == s.size() || s[i] == ',') {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

inline bool parse_number(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) return false;
  return std::isfinite(out);
}

/// Leading word of a header line (up to whitespace), and the rest.
inline std::pair<std::string_view, std::string_view> split_keyword(
    std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
  return {line.substr(0, i), trim(line.substr(i))};
}

/// Attribute name: quoted string or bare word. Returns name + remainder.
inline std::pair<std::string_view, std::string_view> split_name(
    std::string_view rest, int line_no) {
  if (rest.empty())
    throw Error(ErrorCode::MalformedHeader, "missing name", line_no);
  if (rest.front() == '\'' || rest.front() == '"') {
    char q = rest.front();
    std::size_t end = rest.find(q, 1);
    if (end == std::string_view::npos)
      throw Error(ErrorCode::MalformedHeader, "unterminated quote", line_no);
    return {rest.substr(1, end - 1), trim(rest.substr(end + 1))};
  }
  std::size_t i = 0;
  while (i < rest.size() && rest[i] != ' ' && rest[i] != '\t') ++i;
  return {rest.substr(0, i), trim(rest.substr(i))};
}

}  // namespace detail

/// Parse an ARFF stream (the numeric/nominal subset NSL-KDD uses).
/// Every error carries the 1-based line number it was detected at.
inline ArffDocument parse_arff(std::istream& in) {
  using namespace detail;
  ArffDocument doc;
  bool seen_relation = false;
  bool in_data = false;
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data) {
      auto [keyword, rest] = split_keyword(line);
      if (iequals(keyword, "@relation")) {
        if (seen_relation)
          throw Error(ErrorCode::MalformedHeader, "duplicate @relation",
                      line_no);
        auto [name, tail] = split_name(rest, line_no);
        if (!tail.empty())
          throw Error(ErrorCode::MalformedHeader,
                      "unexpected text after relation name", line_no);
        doc.relation_name = std::string(name);
        seen_relation = true;
        continue;
      }
      if (!seen_relation)
        throw Error(ErrorCode::MalformedHeader,
                    "'" + std::string(keyword) + "' before @relation",
                    line_no);
      if (iequals(keyword, "@attribute")) {
        auto [name, type] = split_name(rest, line_no);
        ArffAttribute attr;
        attr.name = std::string(name);
        if (attr.name.empty())
          throw Error(ErrorCode::MalformedHeader, "empty attribute name",
                      line_no);
        for (const auto& existing : doc.attributes)
          if (existing.name == attr.name)
            throw Error(ErrorCode::MalformedHeader,
                        "duplicate attribute name '" + attr.name + "'",
                        line_no);
        if (type.empty())
          throw Error(ErrorCode::MalformedHeader,
                      "missing type for attribute '" + attr.name + "'",
                      line_no);
        if (type.front() == '{') {
          if (type.back() != '}')
            throw Error(ErrorCode::MalformedHeader,
                        "unterminated nominal list", line_no);
          attr.kind = AttrKind::nominal;
          auto inner = trim(type.substr(1, type.size() - 2));
          if (inner.empty())
            throw Error(ErrorCode::MalformedHeader, "empty nominal list",
                        line_no);
          for (auto piece : split_csv(inner)) {
            std::string value(unquote(piece));
            for (const auto& v : attr.values)
              if (v == value)
                throw Error(ErrorCode::MalformedHeader,
                            "duplicate nominal value '" + value + "'",
                            line_no);
            attr.values.push_back(std::move(value));
          }
        } else if (iequals(type, "numeric") || iequals(type, "real") ||
                   iequals(type, "integer")) {
          attr.kind = AttrKind::numeric;
        } else {
          throw Error(ErrorCode::MalformedHeader,
                      "unsupported attribute kind '" + std::string(type) +
                          "'",
                      line_no);
        }
        doc.attributes.push_back(std::move(attr));
        continue;
      }
      if (iequals(keyword, "@data")) {
        in_data = true;
        continue;
      }
      throw Error(ErrorCode::MalformedHeader,
                  "unknown keyword '" + std::string(keyword) + "'", line_no);
    }

    // data section
    if (line.front() == '{')
      throw Error(ErrorCode::ArityMismatch, "sparse rows are not supported",
                  line_no);
    auto tokens = split_csv(line);
    if (tokens.size() != doc.attributes.size())
      throw Error(ErrorCode::ArityMismatch,
                  "row has " + std::to_string(tokens.size()) +
                      " values, expected " +
                      std::to_string(doc.attributes.size()),
                  line_no);
    std::vector<ArffValue> row;
    row.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::string_view token = tokens[i];
      if (token == "?") {
        row.push_back(ArffValue::missing());
        continue;
      }
      const ArffAttribute& attr = doc.attributes[i];
      if (attr.kind == AttrKind::numeric) {
        double v;
        if (!parse_number(token, v))
          throw Error(ErrorCode::NonNumericToken,
                      "'" + std::string(token) + "' in numeric column '" +
                          attr.name + "'",
                      line_no);
        row.push_back(ArffValue::number(v));
      } else {
        std::string value(unquote(token));
        std::int32_t index = -1;
        for (std::size_t j = 0; j < attr.values.size(); ++j)
          if (attr.values[j] == value) {
            index = static_cast<std::int32_t>(j);
            break;
          }
        if (index < 0)
          throw Error(ErrorCode::UndeclaredNominalValue,
                      "'" + value + "' not declared for attribute '" +
                          attr.name + "'",
                      line_no);
        row.push_back(ArffValue::nominal(index));
      }
    }
    doc.instances.push_back(std::move(row));
  }

  if (!seen_relation)
    throw Error(ErrorCode::MalformedHeader, "missing @relation", line_no);
  if (!in_data)
    throw Error(ErrorCode::MalformedHeader, "missing @data", line_no);
  return doc;
}

inline ArffDocument parse_arff_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_arff(in);
}

namespace detail {

inline bool needs_quoting(std::string_view s) {
  if (s.empty() || s == "?") return true;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == ',' || c == '\'' || c == '"' ||
        c == '{' || c == '}' || c == '%')
      return true;
  return false;
}

inline std::string quoted(std::string_view s) {
  if (!needs_quoting(s)) return std::string(s);
  return "'" + std::string(s) + "'";
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Serialize so that parse_arff(write_arff(doc)) == doc.
inline void write_arff(const ArffDocument& doc, std::ostream& out) {
  using namespace detail;
  out << "@relation " << quoted(doc.relation_name) << "\n\n";
  for (const auto& attr : doc.attributes) {
    out << "@attribute " << quoted(attr.name) << ' ';
    if (attr.kind == AttrKind::numeric) {
      out << "numeric";
    } else {
      out << '{';
      for (std::size_t i = 0; i < attr.values.size(); ++i) {
        if (i) out << ',';
        out << quoted(attr.values[i]);
      }
      out << '}';
    }
    out << "\n";
  }
  out << "\n@data\n";
  for (const auto& row : doc.instances) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const ArffValue& v = row[i];
      switch (v.kind()) {
        case ArffValue::Kind::missing: out << '?'; break;
        case ArffValue::Kind::number: out << format_number(v.as_number()); break;
        case ArffValue::Kind::nominal:
          out << quoted(doc.attributes[i]
                            .values[static_cast<std::size_t>(v.nominal_index())]);
          break;
      }
    }
    out << "\n";
  }
}

inline std::string write_arff(const ArffDocument& doc) {
  std::ostringstream out;
  write_arff(doc, out);
  return out.str();
}

/// Header-preserving row subset (used by the protocol runners).
inline ArffDocument document_subset(const ArffDocument& doc,
                                    const std::vector<std::size_t>& rows) {
  ArffDocument out;
  out.relation_name = doc.relation_name;
  out.attributes = doc.attributes;
  out.instances.reserve(rows.size());
  for (std::size_t r : rows) out.instances.push_back(doc.instances[r]);
  return out;
}

}  // namespace idsbench
