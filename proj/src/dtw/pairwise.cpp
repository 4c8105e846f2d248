#include "dtw/pairwise.h"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

#include "core/errors.h"
#include "core/hashing.h"
#include "dtw/checkpoint.h"
#include "dtw/features.h"

namespace melograph {

std::uint64_t totalPairs(std::size_t n) {
  return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

std::pair<std::size_t, std::size_t> pairFromIndex(std::uint64_t p, std::size_t n) {
  // Row i owns (n - 1 - i) pairs.
  std::size_t i = 0;
  std::uint64_t row_pairs = n - 1;
  while (p >= row_pairs) {
    p -= row_pairs;
    ++i;
    --row_pairs;
  }
  return {i, i + 1 + static_cast<std::size_t>(p)};
}

int resolveWorkerCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MELOGRAPH_WORKERS")) {
    int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

PairwiseResult pairwiseMatrix(std::span<const FeatureSequence> segments,
                              std::vector<std::string> ids,
                              const PairwiseOptions& options) {
  const std::size_t n = segments.size();
  if (n < 2) throw ArgumentError("pairwise matrix needs at least 2 segments");
  if (ids.size() != n) throw ArgumentError("id count does not match segment count");

  const std::uint64_t pairs = totalPairs(n);
  const std::uint64_t chunk_size = options.chunk_size > 0 ? options.chunk_size : 64;
  const std::uint64_t num_chunks = (pairs + chunk_size - 1) / chunk_size;

  std::unique_ptr<CheckpointStore> store;
  if (!options.checkpoint_dir.empty()) {
    store = std::make_unique<CheckpointStore>(options.checkpoint_dir,
                                              featureCorpusHash(segments),
                                              options.config_hash, pairs, chunk_size);
  }

  PairwiseResult result;
  result.matrix = DistanceMatrix::zero(std::move(ids));
  std::vector<double> flat(pairs, 0.0);
  std::vector<bool> have(num_chunks, false);

  // Reuse persisted chunks first. A corrupt chunk is reported and falls
  // back to recomputation of that chunk alone; a stale one (foreign
  // corpus/config hash) still refuses.
  if (store) {
    for (std::uint64_t c = 0; c < num_chunks; ++c) {
      if (!store->hasChunk(c)) continue;
      std::vector<double> values;
      try {
        values = store->readChunk(c);
      } catch (const CorruptChunkError& e) {
        std::fprintf(stderr, "warning: %s; recomputing that chunk\n", e.what());
        continue;
      }
      ChunkRange range = store->chunkRange(c);
      std::copy(values.begin(), values.end(),
                flat.begin() + static_cast<std::ptrdiff_t>(range.begin));
      have[c] = true;
      ++result.chunks_reused;
    }
  }

  std::vector<std::uint64_t> todo;
  for (std::uint64_t c = 0; c < num_chunks; ++c) {
    if (!have[c]) todo.push_back(c);
  }

  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> stop{false};
  std::mutex io_mutex;
  std::size_t chunks_done = 0;

  auto worker = [&]() {
    for (;;) {
      if (stop.load()) return;
      std::size_t task = next_task.fetch_add(1);
      if (task >= todo.size()) return;
      std::uint64_t c = todo[task];
      std::uint64_t begin = c * chunk_size;
      std::uint64_t end = std::min(begin + chunk_size, pairs);
      std::vector<double> values;
      values.reserve(end - begin);
      auto [i, j] = pairFromIndex(begin, n);
      for (std::uint64_t p = begin; p < end; ++p) {
        values.push_back(dtw(segments[i], segments[j], options.dtw));
        if (++j >= n) {
          ++i;
          j = i + 1;
        }
      }
      std::lock_guard<std::mutex> lock(io_mutex);
      if (store) store->writeChunk(c, values);
      std::copy(values.begin(), values.end(),
                flat.begin() + static_cast<std::ptrdiff_t>(begin));
      have[c] = true;
      ++chunks_done;
      if (options.cancel && options.cancel(chunks_done)) stop.store(true);
    }
  };

  int workers = std::max(1, std::min<int>(resolveWorkerCount(options.workers),
                                          static_cast<int>(todo.size())));
  if (todo.empty()) workers = 0;
  if (workers <= 1) {
    if (workers == 1) worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  result.chunks_computed = chunks_done;
  for (std::uint64_t c = 0; c < num_chunks; ++c) {
    if (!have[c]) {
      result.complete = false;
      return result;
    }
  }
  for (std::uint64_t p = 0; p < pairs; ++p) {
    auto [i, j] = pairFromIndex(p, n);
    result.matrix.set(i, j, flat[p]);
  }
  return result;
}

}  // namespace melograph
