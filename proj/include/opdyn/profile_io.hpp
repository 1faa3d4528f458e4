#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string_view>

#include <Eigen/Core>

#include "opdyn/profile.hpp"

namespace opdyn {

// Node-value tables: one line per node, "node_id<TAB>v1[<TAB>v2]", '#'
// comments and blank lines allowed, every node in [0, n) exactly once.
// The opinion profile file is the three-column form "node_id s alpha".

/// Column `column` (1-based after the id; 0 selects each row's last value)
/// of a node table with exactly n nodes. Throws ParseError on malformed
/// lines and ConfigError when the table's node count differs from n.
Eigen::VectorXd read_node_column(std::istream& in, std::size_t n, std::size_t column,
                                 std::string_view source = "input");
Eigen::VectorXd load_node_column(const std::filesystem::path& path, std::size_t n,
                                 std::size_t column);

/// Reads the three-column profile.
OpinionProfile read_profile(std::istream& in, std::size_t n, bool normalize_signed = false);
OpinionProfile load_profile(const std::filesystem::path& path, std::size_t n,
                            bool normalize_signed = false);

/// Maps opinions from [-1, 1] to [0, 1] by s -> (s + 1) / 2.
Eigen::VectorXd normalize_signed(const Eigen::VectorXd& s);

/// Writes "node_id<TAB>value" lines with round-trip precision.
void write_node_values(std::ostream& out, const Eigen::VectorXd& values);
void write_profile(std::ostream& out, const OpinionProfile& p);

}  // namespace opdyn
