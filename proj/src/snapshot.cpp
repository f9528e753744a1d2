#include "ratenet/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace ratenet {

namespace {

constexpr char kMagic[4] = {'R', 'N', 'S', 'S'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

template <typename T>
void write_pod(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw DataError("snapshot truncated");
    return value;
}

void write_string(std::ostream& out, const std::string& s) {
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
    const auto len = read_pod<std::uint32_t>(in);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) throw DataError("snapshot truncated");
    return s;
}

void write_id_table(std::ostream& out, const std::vector<std::string>& ids) {
    write_pod<std::uint64_t>(out, ids.size());
    for (const auto& id : ids) write_string(out, id);
}

std::vector<std::string> read_id_table(std::istream& in) {
    const auto count = read_pod<std::uint64_t>(in);
    std::vector<std::string> ids;
    ids.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) ids.push_back(read_string(in));
    return ids;
}

}  // namespace

void save_snapshot(const TemporalBipartiteGraph& graph, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    write_pod<std::uint32_t>(out, kVersion);
    write_id_table(out, graph.primary_ids());
    write_id_table(out, graph.secondary_ids());
    write_pod<std::uint64_t>(out, graph.edge_count());
    for (const Edge& e : graph.edges()) {
        write_pod<std::uint32_t>(out, e.primary);
        write_pod<std::uint32_t>(out, e.secondary);
        write_pod<double>(out, e.rating);
        write_pod<std::int64_t>(out, e.timestamp);
    }
    if (!out) throw DataError("snapshot write failed");
}

TemporalBipartiteGraph load_snapshot(std::istream& in) {
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataError("not a graph snapshot (bad magic)");
    const auto version = read_pod<std::uint32_t>(in);
    if (version != kVersion)
        throw DataError("unsupported snapshot version " + std::to_string(version));
    auto primary_ids = read_id_table(in);
    auto secondary_ids = read_id_table(in);
    const auto edge_count = read_pod<std::uint64_t>(in);
    std::vector<Edge> edges;
    edges.reserve(edge_count);
    for (std::uint64_t i = 0; i < edge_count; ++i) {
        Edge e;
        e.primary = read_pod<std::uint32_t>(in);
        e.secondary = read_pod<std::uint32_t>(in);
        e.rating = read_pod<double>(in);
        e.timestamp = read_pod<std::int64_t>(in);
        edges.push_back(e);
    }
    return {std::move(primary_ids), std::move(secondary_ids), std::move(edges)};
}

void save_snapshot_file(const TemporalBipartiteGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open snapshot for writing: " + path);
    save_snapshot(graph, out);
}

TemporalBipartiteGraph load_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open snapshot: " + path);
    return load_snapshot(in);
}

}  // namespace ratenet
