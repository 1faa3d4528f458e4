#include "opdyn/profile_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "opdyn/errors.hpp"

namespace opdyn {

namespace {

struct Row {
  long long node;
  std::vector<double> values;
};

std::vector<Row> read_rows(std::istream& in, std::string_view source) {
  std::vector<Row> rows;
  std::unordered_set<long long> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string tok; tokens >> tok;) parts.push_back(tok);
    auto fail = [&](const std::string& why) {
      return ParseError(std::string(source) + ": line " + std::to_string(line_no) + ": " + why,
                        line_no);
    };
    if (parts.size() < 2 || parts.size() > 3) throw fail("expected \"node_id value [value]\"");
    Row row{};
    {
      const auto& t = parts[0];
      auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), row.node);
      if (ec != std::errc() || p != t.data() + t.size() || row.node < 0) {
        throw fail("bad node id \"" + t + "\"");
      }
      if (!seen.insert(row.node).second) throw fail("node " + t + " appears more than once");
    }
    for (std::size_t c = 1; c < parts.size(); ++c) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(parts[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != parts[c].size()) throw fail("bad number \"" + parts[c] + "\"");
      row.values.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> index_rows(std::vector<Row> rows, std::size_t n,
                                            std::size_t width, std::string_view source) {
  long long max_id = -1;
  for (const auto& r : rows) max_id = std::max(max_id, r.node);
  const std::size_t found = static_cast<std::size_t>(max_id + 1);
  if (found != n || rows.size() != n) {
    throw ConfigError(std::string(source) + " describes " + std::to_string(rows.size()) +
                      " rows over " + std::to_string(found) + " node ids, but the graph has " +
                      std::to_string(n) + " nodes");
  }
  std::vector<std::vector<double>> by_node(n);
  for (auto& r : rows) {
    if (r.values.size() < width) {
      throw ParseError(std::string(source) + ": node " + std::to_string(r.node) + " has " +
                           std::to_string(r.values.size()) + " values, need " +
                           std::to_string(width),
                       0);
    }
    auto& slot = by_node[static_cast<std::size_t>(r.node)];
    if (!slot.empty()) {
      throw ParseError(std::string(source) + ": node " + std::to_string(r.node) +
                           " appears more than once",
                       0);
    }
    slot = std::move(r.values);
  }
  return by_node;
}

}  // namespace

Eigen::VectorXd read_node_column(std::istream& in, std::size_t n, std::size_t column,
                                 std::string_view source) {
  const auto by_node = index_rows(read_rows(in, source), n, std::max<std::size_t>(column, 1), source);
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = by_node[i];
    out[static_cast<Eigen::Index>(i)] = column == 0 ? row.back() : row[column - 1];
  }
  return out;
}

Eigen::VectorXd load_node_column(const std::filesystem::path& path, std::size_t n,
                                 std::size_t column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return read_node_column(in, n, column, path.string());
}

OpinionProfile read_profile(std::istream& in, std::size_t n, bool normalize) {
  const auto by_node = index_rows(read_rows(in, "profile"), n, 2, "profile");
  Eigen::VectorXd s(static_cast<Eigen::Index>(n)), a(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    s[static_cast<Eigen::Index>(i)] = by_node[i][0];
    a[static_cast<Eigen::Index>(i)] = by_node[i][1];
  }
  if (normalize) s = normalize_signed(s);
  return OpinionProfile(std::move(s), std::move(a));
}

OpinionProfile load_profile(const std::filesystem::path& path, std::size_t n, bool normalize) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return read_profile(in, n, normalize);
}

Eigen::VectorXd normalize_signed(const Eigen::VectorXd& s) {
  return ((s.array() + 1.0) * 0.5).matrix();
}

void write_node_values(std::ostream& out, const Eigen::VectorXd& values) {
  char buf[64];
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld\t%.17g\n", static_cast<long long>(i), values[i]);
    out << buf;
  }
}

void write_profile(std::ostream& out, const OpinionProfile& p) {
  char buf[96];
  out << "# node_id\ts\talpha\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    std::snprintf(buf, sizeof buf, "%zu\t%.17g\t%.17g\n", i, p.innate()[k], p.resistance()[k]);
    out << buf;
  }
}

}  // namespace opdyn
