#pragma once

#include <iosfwd>

#include "ratenet/graph.hpp"

namespace ratenet {

// Versioned binary container: magic, format version, node id tables, edge
// arrays. Little-endian, round-trip stable.
void save_snapshot(const TemporalBipartiteGraph& graph, std::ostream& out);
TemporalBipartiteGraph load_snapshot(std::istream& in);

void save_snapshot_file(const TemporalBipartiteGraph& graph, const std::string& path);
TemporalBipartiteGraph load_snapshot_file(const std::string& path);

}  // namespace ratenet
