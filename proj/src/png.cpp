#include "svqa/png.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

namespace svqa {

namespace {

void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void chunk(std::vector<std::uint8_t>& out, const char type[4],
           const std::vector<std::uint8_t>& payload) {
  put_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  std::uint32_t crc = static_cast<std::uint32_t>(
      ::crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start)));
  put_u32_be(out, crc);
}

}  // namespace

void write_png(const Image& image, const std::filesystem::path& path) {
  const int h = image.height, w = image.width;
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(h) * (1 + 3 * w));
  for (int y = 0; y < h; ++y) {
    std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (1 + 3 * w);
    row[0] = 0;  // filter: none
    std::memcpy(row + 1, image.rgb.data() + static_cast<std::size_t>(y) * 3 * w, 3 * w);
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> deflated(bound);
  if (compress2(deflated.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
    throw DataError("write_png: deflate failed");
  deflated.resize(bound);

  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  std::vector<std::uint8_t> ihdr;
  put_u32_be(ihdr, static_cast<std::uint32_t>(w));
  put_u32_be(ihdr, static_cast<std::uint32_t>(h));
  ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // 8-bit RGB
  chunk(out, "IHDR", ihdr);
  chunk(out, "IDAT", deflated);
  chunk(out, "IEND", {});

  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("write_png: cannot open " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

}  // namespace svqa
