#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>

#include "svqa/generator.hpp"
#include "svqa/grammar.hpp"

namespace svqa {

// Binary record layout (little-endian, format version 1):
//   u32  payload length (bytes after this field)
//   u32  scene seed
//   u32  caption seed
//   u8   label
//   u8   true token length
//   u8   token ids [kMaxTokens]
//   u8   raw RGB bytes [canvas*canvas*3]
inline constexpr int kMaxTokens = 24;
inline constexpr int kFormatVersion = 1;

struct Record {
  std::uint32_t scene_seed = 0;
  std::uint32_t caption_seed = 0;
  bool label = false;
  std::uint8_t length = 0;
  std::array<std::uint8_t, kMaxTokens> tokens{};
  std::vector<std::uint8_t> image;

  bool operator==(const Record&) const = default;
};

inline std::size_t record_payload_bytes(int canvas) {
  return 4 + 4 + 1 + 1 + kMaxTokens + static_cast<std::size_t>(canvas) * canvas * 3;
}

struct ShardInfo {
  std::string file;
  std::int64_t records = 0;
  std::uint32_t crc32 = 0;
};

struct DatasetConfig {
  CaptionType type = CaptionType::explicit_rel;
  std::int64_t n_train = 500000;
  std::int64_t n_val = 10000;
  std::uint32_t master_seed = 0;
  SceneConfig scene;          // overlap_pair is forced on for explicit batches
  GeneratorConfig generator;
  std::int64_t records_per_shard = 10000;
  int scene_retries = 64;  // per record, before aborting the build
  int threads = 1;
};

struct Manifest {
  int format_version = kFormatVersion;
  CaptionType type = CaptionType::explicit_rel;
  std::int64_t n_train = 0;
  std::int64_t n_val = 0;
  std::uint32_t master_seed = 0;
  SceneConfig scene;
  double margin = 0.02;
  int max_tokens = kMaxTokens;
  std::vector<std::string> vocabulary;
  std::vector<ShardInfo> train_shards;
  std::vector<ShardInfo> val_shards;

  GeneratorConfig generator_config() const;
};

// Generates, renders and labels both splits, writing shards plus
// manifest.json under `out_dir`. Deterministic in the config; label stream
// alternates true/false by record index. Throws DataError when a record
// cannot be produced within the retry budget.
Manifest build_dataset(const DatasetConfig& config, const std::filesystem::path& out_dir);

Manifest load_manifest(const std::filesystem::path& dir);
void save_manifest(const Manifest& m, const std::filesystem::path& dir);

// The exact generation of one record, shared by the builder, the verifier
// and tests. `index` only steers the target label via its parity.
Record make_record(const Manifest& m, bool train_split, std::int64_t index, int scene_retries);

// Recompute a record from its provenance seeds and compare. Throws DataError
// with a diagnostic on any mismatch.
void verify_record(const Manifest& m, const Record& record);

class ShardWriter {
 public:
  ShardWriter(const std::filesystem::path& path, int canvas);
  ~ShardWriter();
  void add(const Record& r);
  ShardInfo finalize();  // flushes and returns file/record count/crc32

 private:
  std::string name_;
  std::FILE* file_;
  int canvas_;
  std::int64_t records_ = 0;
  std::uint32_t crc_ = 0;
  bool finalized_ = false;
};

// Streams one shard. The constructor makes a full checksum pass and throws
// ChecksumError on mismatch before any record is handed out. Truncated or
// oversized payloads throw TruncatedError.
class ShardReader {
 public:
  ShardReader(const std::filesystem::path& path, std::uint32_t expected_crc, int canvas);
  ~ShardReader();
  std::optional<Record> next();

 private:
  std::string name_;
  std::FILE* file_;
  int canvas_;
};

// In-memory split for training/evaluation; verifies every shard checksum.
struct Split {
  int canvas = 0;
  std::vector<Record> records;
};
Split load_split(const std::filesystem::path& dir, const Manifest& m, bool train);

struct Batch {
  int size = 0;
  int height = 0, width = 0;
  std::vector<float> images;  // N*H*W*3, unit-scaled
  std::vector<int> tokens;    // N*kMaxTokens
  std::vector<int> lengths;
  std::vector<int> labels;
};

Batch make_batch(const Split& split, const std::vector<std::int64_t>& indices);

// Seed-determined permutation per epoch; the final short batch is dropped.
class BatchIterator {
 public:
  BatchIterator(const Split& split, int batch_size, std::uint64_t epoch_seed);
  std::int64_t batches_per_epoch() const { return batches_; }
  std::optional<Batch> next();

 private:
  const Split& split_;
  int batch_size_;
  std::vector<std::int64_t> order_;
  std::int64_t cursor_ = 0;
  std::int64_t batches_ = 0;
};

}  // namespace svqa
