#ifndef TUNENET_IO_HPP
#define TUNENET_IO_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tunenet/generator.hpp"
#include "tunenet/graph.hpp"

namespace tunenet {

/// Input rejected by a reader; line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Canonical edge list:
///
///   # tunenet edge list
///   # version: <tool version>
///   # nodes: <N>
///   # edges: <E>
///   # params: n=.. m=.. c=.. p_t=.. p_c=.. seed=..   (generated graphs only)
///   u<TAB>v                                          (u < v, sorted)
///
/// Output is byte-identical for identical graphs and parameters.
void write_edge_list(std::ostream& out, const Graph& g,
                     const std::optional<GenParams>& params = std::nullopt);
std::string edge_list_string(const Graph& g,
                             const std::optional<GenParams>& params = std::nullopt);

struct EdgeListDocument {
  Graph graph;
  std::optional<GenParams> params;
  // Original id of each node when the input ids were not dense (and were
  // compacted); empty otherwise.
  std::vector<std::uint64_t> original_ids;
  std::vector<std::string> warnings;
};

// Accepts tab- or space-separated rows and '#' comments anywhere. Throws
// ParseError naming the line for malformed rows, self-loops and duplicate
// edges (in either orientation).
EdgeListDocument read_edge_list(std::istream& in);
EdgeListDocument read_edge_list_file(const std::filesystem::path& path);

std::string format_params(const GenParams& params);
// Parses the "key=value ..." form produced by format_params.
GenParams parse_params(std::string_view text);

// `node_id<TAB>group_id`, one row per node, sorted by node id.
void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in,
                         PartitionKind kind = PartitionKind::kGroundTruth);
Partition read_partition_file(const std::filesystem::path& path,
                              PartitionKind kind = PartitionKind::kGroundTruth);

// GraphML with an integer "community" node attribute when a partition is
// given. Node elements are "n<id>".
void write_graphml(std::ostream& out, const Graph& g,
                   const Partition* partition = nullptr);

// Colors for the ten largest groups, in size order; every other group gets
// kDotFallbackColor.
inline constexpr std::array<std::string_view, 10> kDotPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#17becf", "#393b79"};
inline constexpr std::string_view kDotFallbackColor = "#ffff00";

void write_dot(std::ostream& out, const Graph& g,
               const Partition* partition = nullptr);

}  // namespace tunenet

#endif  // TUNENET_IO_HPP
