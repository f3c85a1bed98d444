#include "tunenet/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace tunenet {
namespace {

constexpr std::string_view kEdgeListTitle = "tunenet edge list";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

// "# key: value" -> (key, value); empty key when the comment has no colon.
std::pair<std::string_view, std::string_view> header_field(std::string_view line) {
  line = trim(line.substr(1));
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return {};
  return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

void check_partition_size(const Graph& g, const Partition* p) {
  if (p && p->node_count() != 0 && p->node_count() != g.node_count()) {
    throw std::invalid_argument("partition does not cover the graph");
  }
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

std::string format_params(const GenParams& p) {
  std::ostringstream out;
  out << "n=" << p.n << " m=" << p.m << " c=" << p.c
      << " p_t=" << format_double(p.p_t) << " p_c=" << format_double(p.p_c)
      << " seed=" << p.seed;
  return out.str();
}

GenParams parse_params(std::string_view text) {
  GenParams p;
  unsigned seen = 0;
  for (auto token : split_ws(text)) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("malformed parameter '" + std::string(token) + "'");
    }
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    auto need = [&](auto parsed) {
      if (!parsed) {
        throw std::invalid_argument("bad value for parameter '" + std::string(key) + "'");
      }
      return *parsed;
    };
    if (key == "n") {
      p.n = need(parse_number<std::size_t>(value));
      seen |= 1;
    } else if (key == "m") {
      p.m = need(parse_number<std::size_t>(value));
      seen |= 2;
    } else if (key == "c") {
      p.c = need(parse_number<std::size_t>(value));
      seen |= 4;
    } else if (key == "p_t") {
      p.p_t = need(parse_number<double>(value));
      seen |= 8;
    } else if (key == "p_c") {
      p.p_c = need(parse_number<double>(value));
      seen |= 16;
    } else if (key == "seed") {
      p.seed = need(parse_number<std::uint64_t>(value));
      seen |= 32;
    } else {
      throw std::invalid_argument("unknown parameter '" + std::string(key) + "'");
    }
  }
  if (seen != 63) throw std::invalid_argument("incomplete parameter set");
  return p;
}

void write_edge_list(std::ostream& out, const Graph& g,
                     const std::optional<GenParams>& params) {
  out << "# " << kEdgeListTitle << '\n'
      << "# version: " << TUNENET_VERSION << '\n'
      << "# nodes: " << g.node_count() << '\n'
      << "# edges: " << g.edge_count() << '\n';
  if (params) out << "# params: " << format_params(*params) << '\n';
  for (const auto& [u, v] : g.edges()) out << u << '\t' << v << '\n';
}

std::string edge_list_string(const Graph& g, const std::optional<GenParams>& params) {
  std::ostringstream out;
  write_edge_list(out, g, params);
  return out.str();
}

EdgeListDocument read_edge_list(std::istream& in) {
  struct Row {
    std::uint64_t u, v;
    std::size_t line;
  };
  EdgeListDocument doc;
  std::optional<std::uint64_t> declared_nodes;
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto [key, value] = header_field(text);
      if (key == "nodes") {
        declared_nodes = parse_number<std::uint64_t>(value);
        if (!declared_nodes) throw ParseError(line_no, "bad node count");
      } else if (key == "params") {
        try {
          doc.params = parse_params(value);
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, e.what());
        }
      }
      continue;
    }
    const auto fields = split_ws(text);
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected two node ids, got " +
                                    std::to_string(fields.size()) + " fields");
    }
    const auto u = parse_number<std::uint64_t>(fields[0]);
    const auto v = parse_number<std::uint64_t>(fields[1]);
    if (!u || !v) throw ParseError(line_no, "node ids must be non-negative integers");
    if (*u == *v) throw ParseError(line_no, "self-loop on node " + std::to_string(*u));
    rows.push_back({*u, *v, line_no});
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(2 * rows.size());
  for (const auto& r : rows) {
    ids.push_back(r.u);
    ids.push_back(r.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  bool dense;
  std::uint64_t node_count;
  if (declared_nodes) {
    node_count = *declared_nodes;
    dense = ids.empty() || ids.back() < node_count;
  } else {
    node_count = ids.empty() ? 0 : ids.back() + 1;
    dense = ids.size() == node_count;
  }
  if (!dense) {
    doc.warnings.push_back("node ids are not dense; compacted " +
                           std::to_string(ids.size()) + " ids to 0.." +
                           std::to_string(ids.size() - 1));
    node_count = ids.size();
    doc.original_ids = ids;
  }
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw ParseError(0, "too many nodes");
  }

  auto local = [&](std::uint64_t id) -> NodeId {
    if (dense) return static_cast<NodeId>(id);
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  doc.graph = Graph(static_cast<std::size_t>(node_count));
  for (const auto& r : rows) {
    if (!doc.graph.add_edge(local(r.u), local(r.v))) {
      throw ParseError(r.line, "duplicate edge " + std::to_string(r.u) + " " +
                                   std::to_string(r.v));
    }
  }
  return doc;
}

EdgeListDocument read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_edge_list(in);
}

void write_partition(std::ostream& out, const Partition& p) {
  for (NodeId u = 0; u < p.node_count(); ++u) {
    out << u << '\t' << p.group_of(u) << '\n';
  }
}

Partition read_partition(std::istream& in, PartitionKind kind) {
  std::vector<std::uint32_t> assignment;
  std::vector<char> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split_ws(text);
    if (fields.size() != 2) throw ParseError(line_no, "expected node_id and group_id");
    const auto u = parse_number<NodeId>(fields[0]);
    const auto group = parse_number<std::uint32_t>(fields[1]);
    if (!u || !group) throw ParseError(line_no, "ids must be non-negative integers");
    if (*u >= assignment.size()) {
      assignment.resize(*u + 1, 0);
      seen.resize(*u + 1, 0);
    }
    if (seen[*u]) throw ParseError(line_no, "node " + std::to_string(*u) + " listed twice");
    seen[*u] = 1;
    assignment[*u] = *group;
  }
  const auto missing = std::find(seen.begin(), seen.end(), 0);
  if (missing != seen.end()) {
    throw ParseError(0, "partition has no row for node " +
                            std::to_string(missing - seen.begin()));
  }
  return Partition::from_assignment(std::move(assignment), kind);
}

Partition read_partition_file(const std::filesystem::path& path, PartitionKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_partition(in, kind);
}

void write_graphml(std::ostream& out, const Graph& g, const Partition* partition) {
  check_partition_size(g, partition);
  const bool labeled = partition && partition->node_count() != 0;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      << "    xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      << "    xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  if (labeled) {
    out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" "
           "attr.type=\"int\"/>\n";
  }
  out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (labeled) {
      out << "    <node id=\"n" << u << "\"><data key=\"community\">"
          << partition->group_of(u) << "</data></node>\n";
    } else {
      out << "    <node id=\"n" << u << "\"/>\n";
    }
  }
  std::size_t e = 0;
  for (const auto& [u, v] : g.edges()) {
    out << "    <edge id=\"e" << e++ << "\" source=\"n" << u << "\" target=\"n" << v
        << "\"/>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const Graph& g, const Partition* partition) {
  check_partition_size(g, partition);
  const bool colored = partition && partition->node_count() != 0;
  std::vector<std::string_view> group_color;
  if (colored) {
    group_color.assign(partition->group_count(), kDotFallbackColor);
    const auto order = partition->groups_by_size();
    for (std::size_t rank = 0; rank < std::min(order.size(), kDotPalette.size()); ++rank) {
      group_color[order[rank]] = kDotPalette[rank];
    }
  }
  out << "graph G {\n";
  if (colored) out << "  node [style=filled];\n";
  for (NodeId u = 0; u < g.node_count(); ++u) {
    out << "  " << u;
    if (colored) {
      out << " [community=" << partition->group_of(u) << ", fillcolor=\""
          << group_color[partition->group_of(u)] << "\"]";
    }
    out << ";\n";
  }
  for (const auto& [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
}

}  // namespace tunenet
