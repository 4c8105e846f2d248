// Chunked checkpoint store for resumable pairwise computations.
//
// A chunk holds the results for a contiguous range of pair indices under
// the canonical enumeration (row-major upper triangle). Chunk files are
// fixed-width binary records behind a versioned header; a JSON manifest
// tracks which ranges are complete.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace melograph {

struct ChunkRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;  // exclusive
};

class CheckpointStore {
 public:
  /// Opens (or initializes) a store under `dir`. An existing manifest is
  /// validated: corpus/config hash mismatch raises StaleCacheError;
  /// overlapping or out-of-range chunks raise CorruptChunkError.
  CheckpointStore(std::filesystem::path dir, std::uint64_t corpus_hash,
                  std::uint64_t config_hash, std::uint64_t total_pairs,
                  std::uint64_t chunk_size);

  std::uint64_t numChunks() const;
  ChunkRange chunkRange(std::uint64_t chunk_index) const;
  bool hasChunk(std::uint64_t chunk_index) const;

  /// Reads a completed chunk; validates header and size against the
  /// manifest (CorruptChunkError names the offending file).
  std::vector<double> readChunk(std::uint64_t chunk_index) const;

  /// Persists a chunk atomically (temp file + rename) and records it in
  /// the manifest. Values must cover the chunk's full range.
  void writeChunk(std::uint64_t chunk_index, std::span<const double> values);

  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path manifestPath() const;
  std::filesystem::path chunkPath(std::uint64_t chunk_index) const;
  void loadManifest();
  void saveManifest() const;

  std::filesystem::path dir_;
  std::uint64_t corpus_hash_;
  std::uint64_t config_hash_;
  std::uint64_t total_pairs_;
  std::uint64_t chunk_size_;
  std::vector<bool> complete_;
};

}  // namespace melograph
