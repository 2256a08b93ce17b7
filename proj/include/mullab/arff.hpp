#ifndef MULLAB_ARFF_HPP
#define MULLAB_ARFF_HPP

/*
 ARFF reading and writing, label binding and train/test splitting.

 Supported subset of the format:
   % comment lines (anywhere)
   @relation <name>
   @attribute <name> numeric | real | integer | {v1, v2, ...}
   @data
   dense rows    v1,v2,...,vn
   sparse rows   {i v, j w, ...}   absent cells take 0 (numeric) or the first category (nominal)
 Keywords are case-insensitive, names and values may be quoted with ' or ",
 and "?" marks a missing value. Errors carry the 1-based line number.

 Labels are attached to a parsed table either by name (a plain list, one per
 line, or a Mulan XML <labels> document) or by taking the last q attributes.
*/

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "random.hpp"

namespace mullab {

struct RawTable {
  std::string relation_name;
  std::vector<Attribute> attributes;
  std::vector<std::vector<AttributeValue>> rows;

  bool operator==(const RawTable&) const = default;
};

namespace arff_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool is_quote(char c) { return c == '\'' || c == '"'; }

// Reads a possibly quoted token from the front of s, advancing s past it.
// Bare tokens end at whitespace or any character in `stops`.
inline std::string take_token(std::string_view& s, std::size_t line, std::string_view stops = "") {
  s = trim(s);
  std::string out;
  if (!s.empty() && is_quote(s.front())) {
    const char q = s.front();
    std::size_t i = 1;
    for (; i < s.size() && s[i] != q; ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) ++i;
      out += s[i];
    }
    if (i >= s.size()) throw ParseError(line, "unterminated quoted string");
    s.remove_prefix(i + 1);
    return out;
  }
  std::size_t i = 0;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
         stops.find(s[i]) == std::string_view::npos)
    ++i;
  out.assign(s.substr(0, i));
  s.remove_prefix(i);
  return out;
}

struct Cell {
  std::string text;
  bool quoted = false;
};

// Splits on commas outside quotes; each cell is trimmed and unquoted.
inline std::vector<Cell> split_cells(std::string_view s, std::size_t line) {
  std::vector<Cell> cells;
  if (trim(s).empty()) return cells;
  std::size_t start = 0;
  char quote = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size()) {
      const char c = s[i];
      if (quote) {
        if (c == '\\') ++i;
        else if (c == quote) quote = 0;
        continue;
      }
      if (is_quote(c)) {
        quote = c;
        continue;
      }
      if (c != ',') continue;
    }
    std::string_view raw = trim(s.substr(start, i - start));
    Cell cell;
    if (!raw.empty() && is_quote(raw.front())) {
      std::string_view rest = raw;
      cell.text = take_token(rest, line);
      cell.quoted = true;
      if (!trim(rest).empty()) throw ParseError(line, "unexpected text after quoted value");
    } else {
      cell.text.assign(raw);
    }
    cells.push_back(std::move(cell));
    start = i + 1;
  }
  if (quote) throw ParseError(line, "unterminated quoted string");
  return cells;
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline AttributeValue parse_value(const Cell& cell, const Attribute& attr, std::size_t line) {
  if (!cell.quoted && cell.text == "?") return AttributeValue::missing();
  if (attr.is_nominal()) {
    const auto it = std::find(attr.categories.begin(), attr.categories.end(), cell.text);
    if (it == attr.categories.end())
      throw ParseError(line, "undeclared nominal value '" + cell.text + "' for attribute '" +
                                 attr.name + "'");
    return AttributeValue::nominal(static_cast<std::size_t>(it - attr.categories.begin()));
  }
  double v = 0;
  if (!parse_double(cell.text, v))
    throw ParseError(line, "invalid numeric value '" + cell.text + "' for attribute '" +
                               attr.name + "'");
  return AttributeValue::numeric(v);
}

inline Attribute parse_attribute(std::string_view rest, std::size_t line) {
  Attribute attr;
  attr.name = take_token(rest, line, "{");
  if (attr.name.empty()) throw ParseError(line, "missing attribute name");
  rest = trim(rest);
  if (!rest.empty() && rest.front() == '{') {
    if (rest.back() != '}') throw ParseError(line, "unterminated nominal value list");
    attr.kind = AttributeKind::nominal;
    for (auto& cell : split_cells(rest.substr(1, rest.size() - 2), line)) {
      if (cell.text.empty()) throw ParseError(line, "empty nominal value");
      if (std::find(attr.categories.begin(), attr.categories.end(), cell.text) !=
          attr.categories.end())
        throw ParseError(line, "duplicate nominal value '" + cell.text + "'");
      attr.categories.push_back(std::move(cell.text));
    }
    if (attr.categories.empty()) throw ParseError(line, "empty nominal value list");
    return attr;
  }
  const std::string type = lower(rest);
  if (type == "numeric" || type == "real" || type == "integer") {
    attr.kind = AttributeKind::numeric;
    return attr;
  }
  throw ParseError(line, "unknown attribute kind '" + std::string(rest) + "'");
}

inline std::vector<AttributeValue> parse_sparse_row(std::string_view row, const RawTable& t,
                                                    std::size_t line) {
  std::vector<AttributeValue> values;
  values.reserve(t.attributes.size());
  for (const auto& a : t.attributes)
    values.push_back(a.is_nominal() ? AttributeValue::nominal(0) : AttributeValue::numeric(0.0));
  if (row.back() != '}') throw ParseError(line, "unterminated sparse row");
  std::string_view inner = row.substr(1, row.size() - 2);
  std::size_t next_min = 0;
  for (const auto& entry : split_cells(inner, line)) {
    std::string_view e = entry.text;
    const auto sep = e.find_first_of(" \t");
    const std::string_view idx_text = sep == std::string_view::npos ? e : e.substr(0, sep);
    std::size_t idx = 0;
    const auto res = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
    if (idx_text.empty() || res.ec != std::errc() || res.ptr != idx_text.data() + idx_text.size() ||
        sep == std::string_view::npos)
      throw ParseError(line, "malformed sparse index '" + std::string(e) + "'");
    if (idx >= t.attributes.size())
      throw ParseError(line, "sparse index " + std::to_string(idx) + " out of range");
    if (idx < next_min)
      throw ParseError(line, "sparse index " + std::to_string(idx) + " not increasing");
    next_min = idx + 1;
    // Re-split the value part so that quoting rules apply to it alone.
    auto value_cells = split_cells(e.substr(sep + 1), line);
    if (value_cells.size() != 1) throw ParseError(line, "malformed sparse value");
    values[idx] = parse_value(value_cells.front(), t.attributes[idx], line);
  }
  return values;
}

}  // namespace arff_detail

inline RawTable parse_arff(std::istream& in) {
  using namespace arff_detail;
  RawTable table;
  bool in_data = false;
  bool seen_relation = false;
  std::string raw_line;
  std::size_t line = 0;
  while (std::getline(in, raw_line)) {
    ++line;
    if (!raw_line.empty() && raw_line.back() == '\r') raw_line.pop_back();
    std::string_view text = trim(raw_line);
    if (text.empty() || text.front() == '%') continue;

    if (in_data) {
      if (text.front() == '@') throw ParseError(line, "directive after @data");
      if (text.front() == '{') {
        table.rows.push_back(parse_sparse_row(text, table, line));
        continue;
      }
      auto cells = split_cells(text, line);
      if (cells.size() != table.attributes.size())
        throw ParseError(line, "row has " + std::to_string(cells.size()) + " values, expected " +
                                   std::to_string(table.attributes.size()));
      std::vector<AttributeValue> row;
      row.reserve(cells.size());
      for (std::size_t a = 0; a < cells.size(); ++a)
        row.push_back(parse_value(cells[a], table.attributes[a], line));
      table.rows.push_back(std::move(row));
      continue;
    }

    if (text.front() != '@') throw ParseError(line, "unexpected content before @data");
    std::string_view rest = text;
    const std::string keyword = lower(take_token(rest, line));
    if (keyword == "@relation") {
      if (seen_relation) throw ParseError(line, "duplicate @relation");
      table.relation_name = take_token(rest, line);
      seen_relation = true;
    } else if (keyword == "@attribute") {
      if (!seen_relation) throw ParseError(line, "@attribute before @relation");
      Attribute attr = parse_attribute(rest, line);
      for (const auto& existing : table.attributes)
        if (existing.name == attr.name)
          throw ParseError(line, "duplicate attribute name '" + attr.name + "'");
      table.attributes.push_back(std::move(attr));
    } else if (keyword == "@data") {
      if (table.attributes.empty()) throw ParseError(line, "@data before any @attribute");
      in_data = true;
    } else {
      throw ParseError(line, "unknown directive '" + keyword + "'");
    }
  }
  if (!in_data) throw ParseError(line + 1, "missing @data section");
  return table;
}

inline RawTable parse_arff(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_arff(in);
}

inline RawTable read_arff_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return parse_arff(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path);
  }
}

namespace arff_detail {

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string quote_if_needed(const std::string& s) {
  const bool plain = !s.empty() && std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '\'' || c == '"' ||
           c == '{' || c == '}' || c == '%' || c == '\\';
  }) && s != "?";
  if (plain) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace arff_detail

// Canonical dense ARFF text for a table. Numbers use the shortest round-trip form.
inline std::string write_arff(const RawTable& t) {
  using namespace arff_detail;
  std::string out = "@relation " + quote_if_needed(t.relation_name) + "\n\n";
  for (const auto& a : t.attributes) {
    out += "@attribute " + quote_if_needed(a.name) + " ";
    if (a.is_nominal()) {
      out += "{";
      for (std::size_t c = 0; c < a.categories.size(); ++c) {
        if (c) out += ",";
        out += quote_if_needed(a.categories[c]);
      }
      out += "}\n";
    } else {
      out += "numeric\n";
    }
  }
  out += "\n@data\n";
  for (const auto& row : t.rows) {
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (a) out += ",";
      if (row[a].is_missing())
        out += "?";
      else if (t.attributes[a].is_nominal())
        out += quote_if_needed(t.attributes[a].categories.at(row[a].category()));
      else
        out += format_number(row[a].number());
    }
    out += "\n";
  }
  return out;
}

// Which attributes hold labels: explicit names, or the last `trailing` attributes.
struct LabelSpec {
  std::variant<std::vector<std::string>, std::size_t> source;

  static LabelSpec names(std::vector<std::string> n) { return {std::move(n)}; }
  static LabelSpec trailing(std::size_t q) { return {q}; }
};

// Label names from a plain list (one per line) or Mulan XML (<label name="..."/>).
inline std::vector<std::string> parse_label_names(std::string_view text) {
  using arff_detail::trim;
  std::vector<std::string> names;
  if (const auto body = trim(text); !body.empty() && body.front() == '<') {
    static const std::regex label_re(R"re(<label\b[^>]*?\bname\s*=\s*(?:"([^"]*)"|'([^']*)'))re");
    const std::string s(body);
    for (auto it = std::sregex_iterator(s.begin(), s.end(), label_re); it != std::sregex_iterator();
         ++it) {
      std::string name = (*it)[1].matched ? (*it)[1].str() : (*it)[2].str();
      static const std::pair<const char*, const char*> entities[] = {
          {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&apos;", "'"}, {"&amp;", "&"}};
      for (const auto& [from, to] : entities)
        for (std::size_t p; (p = name.find(from)) != std::string::npos;)
          name.replace(p, std::string_view(from).size(), to);
      names.emplace_back(trim(name));
    }
  } else {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);)
      if (auto t = trim(line); !t.empty()) names.emplace_back(t);
  }
  if (names.empty()) throw DataError("label list is empty");
  return names;
}

inline std::vector<std::string> read_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_label_names(ss.str());
}

// Moves the label attributes out of the feature schema and into LabelSets.
inline MLDataset bind_labels(const RawTable& raw, const LabelSpec& spec) {
  const std::size_t n_attr = raw.attributes.size();
  std::vector<std::size_t> label_cols;
  if (const auto* q = std::get_if<std::size_t>(&spec.source)) {
    if (*q < 1 || *q >= n_attr)
      throw DataError("trailing label count " + std::to_string(*q) + " invalid for " +
                      std::to_string(n_attr) + " attributes");
    for (std::size_t a = n_attr - *q; a < n_attr; ++a) label_cols.push_back(a);
  } else {
    const auto& names = std::get<std::vector<std::string>>(spec.source);
    if (names.empty()) throw DataError("label list is empty");
    for (const auto& raw_name : names) {
      const auto name = arff_detail::trim(raw_name);
      const auto it = std::find_if(raw.attributes.begin(), raw.attributes.end(),
                                   [&](const Attribute& a) { return a.name == name; });
      if (it == raw.attributes.end())
        throw DataError("label attribute '" + std::string(name) + "' not found");
      const auto col = static_cast<std::size_t>(it - raw.attributes.begin());
      if (std::find(label_cols.begin(), label_cols.end(), col) != label_cols.end())
        throw DataError("label attribute '" + std::string(name) + "' listed twice");
      label_cols.push_back(col);
    }
    if (label_cols.size() >= n_attr) throw DataError("no feature attributes left after binding labels");
  }

  // Category index that means "label present" for each nominal label column.
  std::vector<std::size_t> positive(label_cols.size(), 1);
  Schema schema;
  for (std::size_t k = 0; k < label_cols.size(); ++k) {
    const auto& a = raw.attributes[label_cols[k]];
    if (a.is_nominal()) {
      if (a.category_count() != 2)
        throw DataError("label attribute '" + a.name + "' is not binary");
      if (a.categories[0] == "1" && a.categories[1] == "0") positive[k] = 0;
    }
    schema.label_names.push_back(a.name);
  }
  std::vector<bool> is_label(n_attr, false);
  for (auto c : label_cols) is_label[c] = true;
  std::vector<std::size_t> feature_cols;
  for (std::size_t a = 0; a < n_attr; ++a)
    if (!is_label[a]) {
      feature_cols.push_back(a);
      schema.attributes.push_back(raw.attributes[a]);
    }

  MLDataset out(std::move(schema));
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    LabelSet y(label_cols.size());
    for (std::size_t k = 0; k < label_cols.size(); ++k) {
      const auto& v = row[label_cols[k]];
      const auto& a = raw.attributes[label_cols[k]];
      if (v.is_missing())
        throw DataError("row " + std::to_string(r) + ": missing value for label '" + a.name + "'");
      if (a.is_nominal()) {
        y.set(k, v.category() == positive[k]);
      } else if (v.number() == 0.0 || v.number() == 1.0) {
        y.set(k, v.number() == 1.0);
      } else {
        throw DataError("label attribute '" + a.name + "' is not binary");
      }
    }
    FeatureVector x;
    x.reserve(feature_cols.size());
    for (auto c : feature_cols) x.push_back(row[c]);
    out.add(std::move(x), std::move(y));
  }
  return out;
}

struct SplitCounts {
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

// Train/test partition: either exact counts or a train ratio (n_train = floor(N * ratio)).
struct SplitSpec {
  std::variant<SplitCounts, double> size;
  std::uint64_t seed = 1;

  static SplitSpec counts(std::size_t train, std::size_t test, std::uint64_t seed) {
    return {SplitCounts{train, test}, seed};
  }
  static SplitSpec ratio(double r, std::uint64_t seed) { return {r, seed}; }
};

// Shuffles row indices with Rng(seed); the first n_train go to train, the rest to test.
inline std::pair<MLDataset, MLDataset> split_dataset(const MLDataset& d, const SplitSpec& spec) {
  const std::size_t n = d.size();
  std::size_t n_train = 0;
  if (const auto* c = std::get_if<SplitCounts>(&spec.size)) {
    if (c->n_train + c->n_test != n)
      throw DataError("split counts " + std::to_string(c->n_train) + "+" +
                      std::to_string(c->n_test) + " do not sum to " + std::to_string(n) + " rows");
    n_train = c->n_train;
  } else {
    const double r = std::get<double>(spec.size);
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("split ratio must lie in (0, 1)");
    n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * r));
  }
  Rng rng(spec.seed);
  const auto perm = rng.permutation(n);
  std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return {d.subset(train), d.subset(test)};
}

}  // namespace mullab

#endif  // MULLAB_ARFF_HPP
