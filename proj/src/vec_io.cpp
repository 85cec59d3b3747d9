#include "dpg/vec_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "dpg/error.hpp"

namespace dpg::io {

namespace {

using Bytes = std::array<unsigned char, 4>;

Bytes le_bytes(std::uint32_t v) {
  return {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v >> 16),
          static_cast<unsigned char>(v >> 24)};
}

std::uint32_t from_le(const Bytes& b) {
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw UsageError("cannot open '" + path.string() + "' for writing");
    path_ = path.string();
  }
  void u32(std::uint32_t v) {
    const auto b = le_bytes(v);
    buffer_.insert(buffer_.end(), b.begin(), b.end());
    if (buffer_.size() >= (1u << 20)) flush();
  }
  void i32(std::int32_t v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(const char* s, std::size_t len) { buffer_.insert(buffer_.end(), s, s + len); }
  void finish() {
    flush();
    out_.close();
    if (!out_) throw UsageError("write to '" + path_ + "' failed");
  }

 private:
  void flush() {
    out_.write(reinterpret_cast<const char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
  }
  std::ofstream out_;
  std::string path_;
  std::vector<unsigned char> buffer_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
    if (!in_) throw UsageError("cannot open '" + path.string() + "' for reading");
  }
  std::uint64_t offset() const noexcept { return offset_; }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

  std::uint32_t u32(const char* what) {
    Bytes b{};
    in_.read(reinterpret_cast<char*>(b.data()), 4);
    if (in_.gcount() != 4) throw FormatError(std::string("truncated file while reading ") + what, offset_);
    offset_ += 4;
    return from_le(b);
  }
  std::int32_t i32(const char* what) { return std::bit_cast<std::int32_t>(u32(what)); }
  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }
  void raw(char* dst, std::size_t len, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in_.gcount()) != len) {
      throw FormatError(std::string("truncated file while reading ") + what, offset_);
    }
    offset_ += len;
  }

 private:
  std::ifstream in_;
  std::uint64_t offset_ = 0;
};

// Shared record walker for fvecs/ivecs. `read_value` consumes one element.
template <typename Fn>
std::size_t read_records(Reader& in, Fn&& read_value) {
  std::size_t dim = 0;
  std::size_t count = 0;
  while (!in.at_end()) {
    const auto record_start = in.offset();
    const std::int32_t d = in.i32("record dimension");
    if (d <= 0) throw FormatError("record dimension " + std::to_string(d) + " is not positive", record_start);
    if (count == 0) {
      dim = static_cast<std::size_t>(d);
    } else if (static_cast<std::size_t>(d) != dim) {
      throw FormatError("record dimension " + std::to_string(d) + " differs from first record's " +
                            std::to_string(dim),
                        record_start);
    }
    for (std::size_t j = 0; j < dim; ++j) read_value(in, j);
    ++count;
  }
  if (count == 0) throw FormatError("file holds no records", 0);
  return dim;
}

}  // namespace

VectorSet read_fvecs(const std::filesystem::path& path) {
  Reader in(path);
  std::vector<float> data;
  std::size_t rows = 0;
  const auto dim = read_records(in, [&](Reader& r, std::size_t j) {
    data.push_back(r.f32("vector component"));
    if (j == 0) ++rows;
  });
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw FormatError("non-finite value in record " + std::to_string(i / dim),
                        (i / dim) * (4 + 4 * dim) + 4 + 4 * (i % dim));
    }
  }
  return VectorSet(rows, dim, std::move(data));
}

void write_fvecs(const VectorSet& vectors, const std::filesystem::path& path) {
  Writer out(path);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out.i32(static_cast<std::int32_t>(vectors.dim()));
    for (float v : vectors.row(i)) out.f32(v);
  }
  out.finish();
}

IntRows read_ivecs(const std::filesystem::path& path) {
  Reader in(path);
  IntRows out;
  out.dim = read_records(in, [&](Reader& r, std::size_t j) {
    if (j == 0) out.rows.emplace_back();
    out.rows.back().push_back(r.i32("vector component"));
  });
  return out;
}

void write_ivecs(const IntRows& rows, const std::filesystem::path& path) {
  if (rows.rows.empty() || rows.dim == 0) throw UsageError("ivecs needs at least one nonempty row");
  Writer out(path);
  for (const auto& row : rows.rows) {
    if (row.size() != rows.dim) throw UsageError("ivecs rows must all have length " + std::to_string(rows.dim));
    out.i32(static_cast<std::int32_t>(rows.dim));
    for (auto v : row) out.i32(v);
  }
  out.finish();
}

std::uint64_t index_bytes(const NeighborGraph& graph) {
  return 20 + 4ull * graph.size() + 8ull * graph.edge_count();
}

void save_index(const NeighborGraph& graph, const std::filesystem::path& path) {
  Writer out(path);
  out.raw("DPGI", 4);
  out.u32(kIndexVersion);
  out.u32(static_cast<std::uint32_t>(graph.kind()));
  out.u32(static_cast<std::uint32_t>(graph.size()));
  out.u32(graph.degree());
  for (std::size_t u = 0; u < graph.size(); ++u) {
    const auto list = graph.neighbors(static_cast<NodeId>(u));
    out.u32(static_cast<std::uint32_t>(list.size()));
    for (const auto& e : list) {
      out.u32(e.id);
      out.f32(e.dist);
    }
  }
  out.finish();
}

NeighborGraph load_index(const std::filesystem::path& path) {
  Reader in(path);
  char magic[4];
  in.raw(magic, 4, "magic");
  if (std::memcmp(magic, "DPGI", 4) != 0) throw FormatError("bad magic, not a DPGI index", 0);
  const auto version = in.u32("version");
  if (version != kIndexVersion) throw FormatError("unsupported index version " + std::to_string(version), 4);
  const auto kind = in.u32("kind");
  if (kind > 1) throw FormatError("unknown graph kind " + std::to_string(kind), 8);
  const auto n = in.u32("node count");
  const auto degree = in.u32("degree");
  if (n == 0) throw FormatError("index has no nodes", 12);

  NeighborGraph::Adjacency adj(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto at = in.offset();
    const auto count = in.u32("node degree");
    if (count >= n) throw FormatError("node " + std::to_string(u) + " degree exceeds n - 1", at);
    adj[u].resize(count);
    for (auto& e : adj[u]) {
      e.id = in.u32("neighbor id");
      e.dist = in.f32("neighbor distance");
    }
  }
  const auto body_end = in.offset();
  if (!in.at_end()) throw FormatError("trailing bytes after last node", body_end);
  try {
    return NeighborGraph(static_cast<GraphKind>(kind), degree, std::move(adj));
  } catch (const StructuralError& e) {
    throw FormatError(std::string("index violates graph invariants: ") + e.what(), 20);
  }
}

void save_ground_truth(const GroundTruth& gt, const std::filesystem::path& prefix, std::uint64_t seed) {
  if (gt.lists.empty() || gt.k == 0) throw UsageError("ground truth is empty");
  IntRows ids{gt.k, {}};
  std::vector<float> dists;
  dists.reserve(gt.size() * gt.k);
  for (const auto& list : gt.lists) {
    if (list.size() != gt.k) throw UsageError("ground truth list length differs from k");
    auto& row = ids.rows.emplace_back();
    for (const auto& e : list) {
      row.push_back(static_cast<std::int32_t>(e.id));
      dists.push_back(e.dist);
    }
  }
  const std::string base = prefix.string();
  write_ivecs(ids, base + ".ids.ivecs");
  write_fvecs(VectorSet(gt.size(), gt.k, std::move(dists)), base + ".dist.fvecs");

  nlohmann::json meta = {{"k", gt.k},
                         {"queries", gt.size()},
                         {"baseline_seconds", gt.baseline_seconds},
                         {"seed", seed}};
  std::ofstream out(base + ".meta.json");
  if (!out) throw UsageError("cannot write '" + base + ".meta.json'");
  out << meta.dump(2) << '\n';
}

GroundTruth load_ground_truth(const std::filesystem::path& prefix) {
  const std::string base = prefix.string();
  const IntRows ids = read_ivecs(base + ".ids.ivecs");
  const VectorSet dists = read_fvecs(base + ".dist.fvecs");
  std::ifstream in(base + ".meta.json");
  if (!in) throw UsageError("cannot open '" + base + ".meta.json'");
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("ground truth metadata is not valid JSON: ") + e.what(), 0);
  }

  GroundTruth gt;
  gt.k = meta.value("k", std::size_t{0});
  gt.baseline_seconds = meta.value("baseline_seconds", 0.0);
  if (ids.dim != gt.k || dists.dim() != gt.k || ids.rows.size() != dists.size()) {
    throw FormatError("ground truth files disagree on k or query count", 0);
  }
  for (std::size_t q = 0; q < ids.rows.size(); ++q) {
    auto& list = gt.lists.emplace_back();
    for (std::size_t j = 0; j < gt.k; ++j) {
      if (ids.rows[q][j] < 0) throw FormatError("negative id in ground truth", 0);
      list.push_back({static_cast<NodeId>(ids.rows[q][j]), dists.row(q)[j]});
    }
  }
  return gt;
}

}  // namespace dpg::io
