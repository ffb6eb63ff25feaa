#include "svqa/dataset.hpp"

#include <json.hpp>
#include <zlib.h>

#include <cstring>
#include <fstream>
#include <future>

#include "svqa/rng.hpp"

namespace svqa {

namespace {

using nlohmann::json;

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
  buf.push_back(static_cast<std::uint8_t>(v));
  buf.push_back(static_cast<std::uint8_t>(v >> 8));
  buf.push_back(static_cast<std::uint8_t>(v >> 16));
  buf.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

json scene_to_json(const SceneConfig& s) {
  return json{{"canvas", s.canvas},
              {"count_min", s.count_min},
              {"count_max", s.count_max},
              {"size_min", s.size_min},
              {"size_max", s.size_max},
              {"overlap_pair", s.overlap_pair},
              {"overlap_min", s.overlap_min},
              {"overlap_max", s.overlap_max},
              {"entity_attempts", s.entity_attempts}};
}

SceneConfig scene_from_json(const json& j) {
  SceneConfig s;
  s.canvas = j.at("canvas");
  s.count_min = j.at("count_min");
  s.count_max = j.at("count_max");
  s.size_min = j.at("size_min");
  s.size_max = j.at("size_max");
  s.overlap_pair = j.at("overlap_pair");
  s.overlap_min = j.at("overlap_min");
  s.overlap_max = j.at("overlap_max");
  s.entity_attempts = j.at("entity_attempts");
  return s;
}

json shards_to_json(const std::vector<ShardInfo>& shards) {
  json arr = json::array();
  for (const auto& s : shards)
    arr.push_back(json{{"file", s.file}, {"records", s.records}, {"crc32", s.crc32}});
  return arr;
}

std::vector<ShardInfo> shards_from_json(const json& arr) {
  std::vector<ShardInfo> out;
  for (const auto& j : arr)
    out.push_back(ShardInfo{j.at("file"), j.at("records"), j.at("crc32")});
  return out;
}

}  // namespace

GeneratorConfig Manifest::generator_config() const {
  GeneratorConfig g;
  g.semantics.margin = margin;
  return g;
}

void save_manifest(const Manifest& m, const std::filesystem::path& dir) {
  json j{{"format_version", m.format_version},
         {"type", to_string(m.type)},
         {"n_train", m.n_train},
         {"n_val", m.n_val},
         {"master_seed", m.master_seed},
         {"scene", scene_to_json(m.scene)},
         {"margin", m.margin},
         {"max_tokens", m.max_tokens},
         {"vocabulary", m.vocabulary},
         {"train_shards", shards_to_json(m.train_shards)},
         {"val_shards", shards_to_json(m.val_shards)}};
  std::ofstream out(dir / "manifest.json");
  if (!out) throw DataError("cannot write manifest under " + dir.string());
  out << j.dump(2) << "\n";
}

Manifest load_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw DataError("no manifest.json under " + dir.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("manifest.json is not valid JSON: " + std::string(e.what()));
  }
  Manifest m;
  m.format_version = j.at("format_version");
  if (m.format_version != kFormatVersion)
    throw VersionError("dataset format version " + std::to_string(m.format_version) +
                       ", expected " + std::to_string(kFormatVersion));
  m.type = caption_type_from_string(j.at("type"));
  m.n_train = j.at("n_train");
  m.n_val = j.at("n_val");
  m.master_seed = j.at("master_seed");
  m.scene = scene_from_json(j.at("scene"));
  m.margin = j.at("margin");
  m.max_tokens = j.at("max_tokens");
  if (m.max_tokens != kMaxTokens)
    throw VersionError("unsupported max_tokens in manifest: " + std::to_string(m.max_tokens));
  m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
  m.train_shards = shards_from_json(j.at("train_shards"));
  m.val_shards = shards_from_json(j.at("val_shards"));
  return m;
}

Record make_record(const Manifest& m, bool train_split, std::int64_t index, int scene_retries) {
  const Vocabulary vocab(m.vocabulary);
  GeneratorConfig gen = m.generator_config();
  bool target = index % 2 == 0;
  std::uint64_t stream = mix_seed(m.master_seed, train_split ? 1 : 2);

  for (int retry = 0; retry < scene_retries; ++retry) {
    std::uint64_t base = mix_seed(stream, static_cast<std::uint64_t>(index) * 64 + retry);
    auto scene_seed = static_cast<std::uint32_t>(base);
    auto caption_seed = static_cast<std::uint32_t>(base >> 32);
    Scene scene;
    Caption caption;
    try {
      scene = sample_scene(scene_seed, m.scene);
      caption = generate_caption(scene, m.type, target, caption_seed, gen).first;
    } catch (const PlacementError&) {
      continue;
    } catch (const GenerationError&) {
      continue;
    }
    Record rec;
    rec.scene_seed = scene_seed;
    rec.caption_seed = caption_seed;
    rec.label = target;
    Encoded enc = encode(realize(caption), vocab, kMaxTokens);
    rec.length = static_cast<std::uint8_t>(enc.length);
    for (int t = 0; t < kMaxTokens; ++t) rec.tokens[t] = static_cast<std::uint8_t>(enc.ids[t]);
    rec.image = render(scene).rgb;
    return rec;
  }
  throw DataError("record " + std::to_string(index) + " (" + (train_split ? "train" : "val") +
                  ", type " + to_string(m.type) + "): no scene admitted a " +
                  (target ? std::string("true") : "false") + " caption after " +
                  std::to_string(scene_retries) + " retries");
}

void verify_record(const Manifest& m, const Record& record) {
  Scene scene = sample_scene(record.scene_seed, m.scene);
  auto [caption, label] =
      generate_caption(scene, m.type, record.label, record.caption_seed, m.generator_config());
  if (label != record.label) throw DataError("verify_record: label mismatch");
  if (evaluate(scene, caption, SemanticsConfig{m.margin}) !=
      (record.label ? Verdict::yes : Verdict::no))
    throw DataError("verify_record: oracle disagrees with stored label");
  const Vocabulary vocab(m.vocabulary);
  Encoded enc = encode(realize(caption), vocab, kMaxTokens);
  if (enc.length != record.length) throw DataError("verify_record: token length mismatch");
  for (int t = 0; t < kMaxTokens; ++t)
    if (record.tokens[t] != static_cast<std::uint8_t>(enc.ids[t]))
      throw DataError("verify_record: token ids mismatch");
  if (render(scene).rgb != record.image) throw DataError("verify_record: image bytes mismatch");
}

ShardWriter::ShardWriter(const std::filesystem::path& path, int canvas)
    : name_(path.filename().string()), file_(std::fopen(path.string().c_str(), "wb")),
      canvas_(canvas), crc_(static_cast<std::uint32_t>(::crc32(0L, nullptr, 0))) {
  if (!file_) throw DataError("cannot open shard for writing: " + path.string());
}

ShardWriter::~ShardWriter() {
  if (file_) std::fclose(file_);
}

void ShardWriter::add(const Record& r) {
  std::size_t payload = record_payload_bytes(canvas_);
  if (r.image.size() != static_cast<std::size_t>(canvas_) * canvas_ * 3)
    throw DataError("shard writer: image size does not match the configured canvas");
  std::vector<std::uint8_t> buf;
  buf.reserve(payload + 4);
  put_u32(buf, static_cast<std::uint32_t>(payload));
  put_u32(buf, r.scene_seed);
  put_u32(buf, r.caption_seed);
  buf.push_back(r.label ? 1 : 0);
  buf.push_back(r.length);
  buf.insert(buf.end(), r.tokens.begin(), r.tokens.end());
  buf.insert(buf.end(), r.image.begin(), r.image.end());
  if (std::fwrite(buf.data(), 1, buf.size(), file_) != buf.size())
    throw DataError("short write on shard " + name_);
  crc_ = static_cast<std::uint32_t>(
      ::crc32(crc_, buf.data(), static_cast<uInt>(buf.size())));
  ++records_;
}

ShardInfo ShardWriter::finalize() {
  if (finalized_) throw DataError("shard already finalized: " + name_);
  finalized_ = true;
  std::fflush(file_);
  std::fclose(file_);
  file_ = nullptr;
  return ShardInfo{name_, records_, crc_};
}

ShardReader::ShardReader(const std::filesystem::path& path, std::uint32_t expected_crc,
                         int canvas)
    : name_(path.filename().string()), file_(std::fopen(path.string().c_str(), "rb")),
      canvas_(canvas) {
  if (!file_) throw DataError("cannot open shard: " + path.string());
  // full checksum pass before handing out any record
  std::uint32_t crc = static_cast<std::uint32_t>(::crc32(0L, nullptr, 0));
  std::vector<std::uint8_t> chunk(1 << 16);
  std::size_t got;
  while ((got = std::fread(chunk.data(), 1, chunk.size(), file_)) > 0)
    crc = static_cast<std::uint32_t>(::crc32(crc, chunk.data(), static_cast<uInt>(got)));
  if (crc != expected_crc) {
    std::fclose(file_);
    file_ = nullptr;
    throw ChecksumError("shard " + name_ + ": checksum mismatch");
  }
  std::rewind(file_);
}

ShardReader::~ShardReader() {
  if (file_) std::fclose(file_);
}

std::optional<Record> ShardReader::next() {
  std::uint8_t head[4];
  std::size_t got = std::fread(head, 1, 4, file_);
  if (got == 0) return std::nullopt;
  if (got != 4) throw TruncatedError("shard " + name_ + ": truncated record header");
  std::size_t payload = record_payload_bytes(canvas_);
  if (get_u32(head) != payload)
    throw TruncatedError("shard " + name_ + ": unexpected record length " +
                         std::to_string(get_u32(head)));
  std::vector<std::uint8_t> buf(payload);
  if (std::fread(buf.data(), 1, payload, file_) != payload)
    throw TruncatedError("shard " + name_ + ": truncated record body");
  Record r;
  r.scene_seed = get_u32(buf.data());
  r.caption_seed = get_u32(buf.data() + 4);
  r.label = buf[8] != 0;
  r.length = buf[9];
  std::memcpy(r.tokens.data(), buf.data() + 10, kMaxTokens);
  r.image.assign(buf.begin() + 10 + kMaxTokens, buf.end());
  return r;
}

namespace {

std::string shard_name(bool train, std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%05lld.bin", train ? "train" : "val",
                static_cast<long long>(index));
  return buf;
}

std::vector<ShardInfo> build_split(const Manifest& m, const DatasetConfig& cfg, bool train,
                                   const std::filesystem::path& dir) {
  std::int64_t total = train ? cfg.n_train : cfg.n_val;
  std::int64_t per_shard = cfg.records_per_shard;
  std::int64_t shard_count = (total + per_shard - 1) / per_shard;

  auto write_shard = [&](std::int64_t s) {
    ShardWriter writer(dir / shard_name(train, s), m.scene.canvas);
    std::int64_t hi = std::min(total, (s + 1) * per_shard);
    for (std::int64_t i = s * per_shard; i < hi; ++i)
      writer.add(make_record(m, train, i, cfg.scene_retries));
    return writer.finalize();
  };

  std::vector<ShardInfo> infos(shard_count);
  int workers = std::max(1, cfg.threads);
  if (workers == 1 || shard_count == 1) {
    for (std::int64_t s = 0; s < shard_count; ++s) infos[s] = write_shard(s);
  } else {
    std::vector<std::future<void>> futures;
    for (int w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        for (std::int64_t s = w; s < shard_count; s += workers) infos[s] = write_shard(s);
      }));
    }
    for (auto& f : futures) f.get();
  }
  return infos;
}

}  // namespace

Manifest build_dataset(const DatasetConfig& config, const std::filesystem::path& out_dir) {
  if (config.n_train < 1 || config.n_val < 1)
    throw ConfigError("build_dataset: both splits need at least one record");
  if (config.scene_retries < 1 || config.scene_retries > 64)
    throw ConfigError("build_dataset: scene_retries must lie in [1, 64]");

  Manifest m;
  m.type = config.type;
  m.n_train = config.n_train;
  m.n_val = config.n_val;
  m.master_seed = config.master_seed;
  m.scene = config.scene;
  // behind/front captions exist only for the explicit batch, and they need an
  // occluding pair to be satisfiable
  m.scene.overlap_pair = config.type == CaptionType::explicit_rel;
  m.margin = config.generator.semantics.margin;
  m.vocabulary = Vocabulary::builtin().words();

  std::filesystem::create_directories(out_dir);
  m.train_shards = build_split(m, config, true, out_dir);
  m.val_shards = build_split(m, config, false, out_dir);
  save_manifest(m, out_dir);
  return m;
}

Split load_split(const std::filesystem::path& dir, const Manifest& m, bool train) {
  Split split;
  split.canvas = m.scene.canvas;
  const auto& shards = train ? m.train_shards : m.val_shards;
  for (const auto& info : shards) {
    ShardReader reader(dir / info.file, info.crc32, m.scene.canvas);
    std::int64_t n = 0;
    while (auto rec = reader.next()) {
      split.records.push_back(std::move(*rec));
      ++n;
    }
    if (n != info.records)
      throw DataError("shard " + info.file + ": manifest promises " +
                      std::to_string(info.records) + " records, found " + std::to_string(n));
  }
  return split;
}

Batch make_batch(const Split& split, const std::vector<std::int64_t>& indices) {
  Batch b;
  b.size = static_cast<int>(indices.size());
  b.height = b.width = split.canvas;
  b.images.resize(static_cast<std::size_t>(b.size) * split.canvas * split.canvas * 3);
  b.tokens.resize(static_cast<std::size_t>(b.size) * kMaxTokens);
  b.lengths.resize(b.size);
  b.labels.resize(b.size);
  std::size_t pixels = static_cast<std::size_t>(split.canvas) * split.canvas * 3;
  for (int n = 0; n < b.size; ++n) {
    const Record& r = split.records[indices[n]];
    for (std::size_t p = 0; p < pixels; ++p)
      b.images[n * pixels + p] = static_cast<float>(r.image[p]) / 255.0f;
    for (int t = 0; t < kMaxTokens; ++t) b.tokens[n * kMaxTokens + t] = r.tokens[t];
    b.lengths[n] = r.length;
    b.labels[n] = r.label ? 1 : 0;
  }
  return b;
}

BatchIterator::BatchIterator(const Split& split, int batch_size, std::uint64_t epoch_seed)
    : split_(split), batch_size_(batch_size) {
  if (batch_size_ < 1) throw ConfigError("batch size must be positive");
  order_.resize(split.records.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<std::int64_t>(i);
  Rng rng(mix_seed(epoch_seed, 0xba7c4));
  for (std::size_t i = order_.size(); i > 1; --i)
    std::swap(order_[i - 1], order_[rng.uniform_int(i)]);
  batches_ = static_cast<std::int64_t>(order_.size()) / batch_size_;
}

std::optional<Batch> BatchIterator::next() {
  if (cursor_ >= batches_) return std::nullopt;
  std::vector<std::int64_t> indices(order_.begin() + cursor_ * batch_size_,
                                    order_.begin() + (cursor_ + 1) * batch_size_);
  ++cursor_;
  return make_batch(split_, indices);
}

}  // namespace svqa
