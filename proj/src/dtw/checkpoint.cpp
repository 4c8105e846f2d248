#include "dtw/checkpoint.h"

#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "core/errors.h"
#include "core/hashing.h"

namespace melograph {

namespace {

constexpr char kMagic[8] = {'M', 'G', 'C', 'H', 'N', 'K', '0', '1'};
constexpr std::size_t kHeaderBytes = 8 + 4 * sizeof(std::uint64_t);

void putU64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

std::uint64_t getU64(const char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptChunkError("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

void writeFileAtomic(const std::filesystem::path& path, const std::string& data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw MelographError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

CheckpointStore::CheckpointStore(std::filesystem::path dir, std::uint64_t corpus_hash,
                                 std::uint64_t config_hash, std::uint64_t total_pairs,
                                 std::uint64_t chunk_size)
    : dir_(std::move(dir)),
      corpus_hash_(corpus_hash),
      config_hash_(config_hash),
      total_pairs_(total_pairs),
      chunk_size_(chunk_size) {
  if (chunk_size_ == 0) throw ArgumentError("chunk size must be positive");
  std::filesystem::create_directories(dir_);
  complete_.assign(numChunks(), false);
  if (std::filesystem::exists(manifestPath())) loadManifest();
}

std::uint64_t CheckpointStore::numChunks() const {
  return (total_pairs_ + chunk_size_ - 1) / chunk_size_;
}

ChunkRange CheckpointStore::chunkRange(std::uint64_t chunk_index) const {
  ChunkRange range;
  range.begin = chunk_index * chunk_size_;
  range.end = std::min(range.begin + chunk_size_, total_pairs_);
  return range;
}

bool CheckpointStore::hasChunk(std::uint64_t chunk_index) const {
  return chunk_index < complete_.size() && complete_[chunk_index];
}

std::filesystem::path CheckpointStore::manifestPath() const {
  return dir_ / "manifest.json";
}

std::filesystem::path CheckpointStore::chunkPath(std::uint64_t chunk_index) const {
  return dir_ / ("chunk-" + std::to_string(chunk_index) + ".bin");
}

void CheckpointStore::loadManifest() {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(readFile(manifestPath()));
  } catch (const nlohmann::json::exception& e) {
    throw CorruptChunkError("unreadable manifest " + manifestPath().string() + ": " + e.what());
  }
  if (manifest.at("corpus_hash").get<std::string>() != hashToHex(corpus_hash_) ||
      manifest.at("config_hash").get<std::string>() != hashToHex(config_hash_)) {
    throw StaleCacheError("checkpoint data in " + dir_.string() +
                          " was produced under a different corpus or configuration; "
                          "remove the directory to recompute");
  }
  if (manifest.at("total_pairs").get<std::uint64_t>() != total_pairs_ ||
      manifest.at("chunk_size").get<std::uint64_t>() != chunk_size_) {
    throw StaleCacheError("checkpoint layout in " + dir_.string() +
                          " does not match the current job");
  }
  std::vector<bool> seen(total_pairs_, false);
  for (const auto& chunk : manifest.at("chunks")) {
    std::uint64_t begin = chunk.at("begin").get<std::uint64_t>();
    std::uint64_t end = chunk.at("end").get<std::uint64_t>();
    if (begin >= end || end > total_pairs_ || begin % chunk_size_ != 0) {
      throw CorruptChunkError("manifest chunk range [" + std::to_string(begin) + ", " +
                              std::to_string(end) + ") is invalid");
    }
    for (std::uint64_t p = begin; p < end; ++p) {
      if (seen[p]) {
        throw CorruptChunkError("manifest has overlapping ranges at pair " +
                                std::to_string(p));
      }
      seen[p] = true;
    }
    complete_[begin / chunk_size_] = true;
  }
}

void CheckpointStore::saveManifest() const {
  nlohmann::json manifest;
  manifest["corpus_hash"] = hashToHex(corpus_hash_);
  manifest["config_hash"] = hashToHex(config_hash_);
  manifest["total_pairs"] = total_pairs_;
  manifest["chunk_size"] = chunk_size_;
  nlohmann::json chunks = nlohmann::json::array();
  for (std::uint64_t c = 0; c < complete_.size(); ++c) {
    if (!complete_[c]) continue;
    ChunkRange range = chunkRange(c);
    nlohmann::json entry;
    entry["begin"] = range.begin;
    entry["end"] = range.end;
    entry["file"] = chunkPath(c).filename().string();
    chunks.push_back(entry);
  }
  manifest["chunks"] = chunks;
  writeFileAtomic(manifestPath(), manifest.dump(2) + "\n");
}

std::vector<double> CheckpointStore::readChunk(std::uint64_t chunk_index) const {
  const std::filesystem::path path = chunkPath(chunk_index);
  std::string data = readFile(path);
  ChunkRange range = chunkRange(chunk_index);
  const std::uint64_t count = range.end - range.begin;
  if (data.size() != kHeaderBytes + count * sizeof(double)) {
    throw CorruptChunkError("chunk " + path.string() + " has wrong size");
  }
  if (std::memcmp(data.data(), kMagic, 8) != 0) {
    throw CorruptChunkError("chunk " + path.string() + " has bad magic");
  }
  if (getU64(data.data() + 8) != corpus_hash_ || getU64(data.data() + 16) != config_hash_) {
    throw StaleCacheError("chunk " + path.string() +
                          " was computed under a different corpus or configuration");
  }
  if (getU64(data.data() + 24) != range.begin || getU64(data.data() + 32) != range.end) {
    throw CorruptChunkError("chunk " + path.string() + " covers an unexpected range");
  }
  std::vector<double> values(count);
  std::memcpy(values.data(), data.data() + kHeaderBytes, count * sizeof(double));
  return values;
}

void CheckpointStore::writeChunk(std::uint64_t chunk_index, std::span<const double> values) {
  ChunkRange range = chunkRange(chunk_index);
  if (values.size() != range.end - range.begin) {
    throw ArgumentError("chunk value count does not match its range");
  }
  std::string data;
  data.reserve(kHeaderBytes + values.size() * sizeof(double));
  data.append(kMagic, 8);
  putU64(data, corpus_hash_);
  putU64(data, config_hash_);
  putU64(data, range.begin);
  putU64(data, range.end);
  data.resize(kHeaderBytes + values.size() * sizeof(double));
  std::memcpy(data.data() + kHeaderBytes, values.data(), values.size() * sizeof(double));
  writeFileAtomic(chunkPath(chunk_index), data);
  complete_[chunk_index] = true;
  saveManifest();
}

}  // namespace melograph
