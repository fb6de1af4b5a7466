#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "vcm/error.hpp"
#include "vcm/graph.hpp"

// Weighted edge list ("WEL") files: UTF-8, one `source<TAB>target<TAB>weight`
// per line, `#` comment lines and blank lines ignored, no header.

namespace vcm {

struct EventPair {
  std::string source;
  std::string target;
};

using EventPairLog = std::vector<EventPair>;

namespace detail {

inline std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("read failed for '" + path.string() + "'");
  return std::move(buf).str();
}

}  // namespace detail

// Shortest decimal text that reads back to the same double.
inline std::string format_weight(double w) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, end);
}

inline std::vector<EdgeRecord> parse_edge_list(std::istream& in) {
  std::vector<EdgeRecord> edges;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim_cr(raw);
    if (line.empty() || line.front() == '#') continue;

    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (count == 3) throw parse_error(line_no, "expected 3 tab-separated fields");
      fields[count++] = line.substr(start, tab == std::string_view::npos ? tab : tab - start);
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (count != 3) throw parse_error(line_no, "expected 3 tab-separated fields");

    double weight{};
    const char* first = fields[2].data();
    const char* last = first + fields[2].size();
    auto [ptr, ec] = std::from_chars(first, last, weight);
    if (ec != std::errc{} || ptr != last || fields[2].empty())
      throw parse_error(line_no, "bad weight '" + std::string(fields[2]) + "'");

    EdgeRecord e{std::string(fields[0]), std::string(fields[1]), weight};
    validate_edge(e, line_no);
    edges.push_back(std::move(e));
  }
  return edges;
}

inline std::vector<EdgeRecord> read_edge_list(const std::filesystem::path& path) {
  std::istringstream in(detail::read_file(path));
  return parse_edge_list(in);
}

inline Graph load_edge_list(const std::filesystem::path& path, bool undirected) {
  auto edges = read_edge_list(path);
  return build_graph(edges, undirected);
}

// Counts events per pair; the count becomes the edge weight. With
// `undirected`, (a,b) and (b,a) are counted together under (min, max).
inline std::vector<EdgeRecord> aggregate_pairs(const EventPairLog& log, bool undirected) {
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const EventPair& e : log) {
    if (undirected && e.target < e.source)
      ++counts[{e.target, e.source}];
    else
      ++counts[{e.source, e.target}];
  }
  std::vector<EdgeRecord> out;
  out.reserve(counts.size());
  for (const auto& [pair, n] : counts)
    out.push_back({pair.first, pair.second, static_cast<double>(n)});
  return out;
}

inline void write_edge_list(std::ostream& out, std::vector<EdgeRecord> edges) {
  std::sort(edges.begin(), edges.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
    return std::tie(a.source, a.target, a.weight) < std::tie(b.source, b.target, b.weight);
  });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeRecord& e = edges[i];
    validate_edge(e, i + 1);
    for (const std::string* label : {&e.source, &e.target})
      if (label->find_first_of("\t\r\n") != std::string::npos)
        throw validation_error(i + 1, "label contains a tab or line break");
    if (e.source.front() == '#') throw validation_error(i + 1, "source label starts with '#'");
    out << e.source << '\t' << e.target << '\t' << format_weight(e.weight) << '\n';
  }
}

inline void write_edge_list(const std::vector<EdgeRecord>& edges,
                            const std::filesystem::path& path) {
  std::ostringstream text;
  write_edge_list(text, edges);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << text.str();
  out.flush();
  if (!out) throw io_error("write failed for '" + path.string() + "'");
}

// Splits CSV text into records (RFC 4180 quoting, embedded line breaks
// allowed). Each record carries the line it starts on.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> parse_csv(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
  std::vector<std::string> fields;
  std::string field;
  std::size_t line = 1, record_line = 1;
  bool quoted = false, any = false;

  auto end_record = [&] {
    if (any || !field.empty() || !fields.empty()) {
      fields.push_back(std::move(field));
      records.emplace_back(record_line, std::move(fields));
    }
    fields = {};
    field.clear();
    any = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        record_line = ++line;
        break;
      default:
        field += ch;
    }
  }
  if (quoted) throw parse_error(record_line, "unterminated quoted field");
  end_record();
  return records;
}

inline EventPairLog read_pair_log(std::istream& in, std::size_t src_col, std::size_t dst_col,
                                  bool header) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = std::move(buf).str();
  EventPairLog log;
  bool skip = header;
  for (auto& [line, fields] : parse_csv(text)) {
    if (skip) {
      skip = false;
      continue;
    }
    if (fields.size() <= std::max(src_col, dst_col))
      throw parse_error(line, "missing column (record has " + std::to_string(fields.size()) +
                                  " fields)");
    if (fields[src_col].empty() || fields[dst_col].empty())
      throw validation_error(line, "empty vertex label");
    log.push_back({std::move(fields[src_col]), std::move(fields[dst_col])});
  }
  return log;
}

inline EventPairLog read_pair_log(const std::filesystem::path& path, std::size_t src_col,
                                  std::size_t dst_col, bool header) {
  std::istringstream in(detail::read_file(path));
  return read_pair_log(in, src_col, dst_col, header);
}

}  // namespace vcm
