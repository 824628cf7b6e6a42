// Copyright (c) 2026 The privflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privflow/archive.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>

namespace privflow {

namespace {

constexpr std::uint32_t kEndOfCentralDirectory = 0x06054b50;
constexpr std::uint32_t kCentralDirectoryHeader = 0x02014b50;
constexpr std::uint32_t kLocalFileHeader = 0x04034b50;
constexpr std::size_t kEocdSize = 22;

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  if (at + 2 > b.size()) throw ArchiveError("truncated ZIP structure");
  return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  if (at + 4 > b.size()) throw ArchiveError("truncated ZIP structure");
  return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> in, std::size_t expected) {
  std::vector<std::uint8_t> out(expected);
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw ArchiveError("inflateInit2 failed");
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) throw ArchiveError("corrupt deflate stream");
  return out;
}

}  // namespace

std::vector<ArchiveEntry> read_zip(std::span<const std::uint8_t> bytes,
                                   std::vector<std::string>* bad) {
  if (bytes.size() < kEocdSize) throw ArchiveError("file too small to be a ZIP archive");
  std::size_t eocd = std::string::npos;
  std::size_t lowest = bytes.size() > 0xffff + kEocdSize ? bytes.size() - 0xffff - kEocdSize : 0;
  for (std::size_t pos = bytes.size() - kEocdSize + 1; pos-- > lowest;) {
    if (le32(bytes, pos) == kEndOfCentralDirectory) {
      eocd = pos;
      break;
    }
  }
  if (eocd == std::string::npos) throw ArchiveError("no end-of-central-directory record");

  std::uint16_t count = le16(bytes, eocd + 10);
  std::uint32_t cd_offset = le32(bytes, eocd + 16);
  if (cd_offset == 0xffffffff) throw ArchiveError("ZIP64 archives are not supported");

  std::vector<ArchiveEntry> out;
  std::size_t pos = cd_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (le32(bytes, pos) != kCentralDirectoryHeader) throw ArchiveError("corrupt central directory");
    std::uint16_t flags = le16(bytes, pos + 8);
    std::uint16_t method = le16(bytes, pos + 10);
    std::uint32_t crc = le32(bytes, pos + 16);
    std::uint32_t csize = le32(bytes, pos + 20);
    std::uint32_t usize = le32(bytes, pos + 24);
    std::uint16_t name_len = le16(bytes, pos + 28);
    std::uint16_t extra_len = le16(bytes, pos + 30);
    std::uint16_t comment_len = le16(bytes, pos + 32);
    std::uint32_t local = le32(bytes, pos + 42);
    if (pos + 46 + name_len > bytes.size()) throw ArchiveError("corrupt central directory");
    std::string name(reinterpret_cast<const char*>(bytes.data() + pos + 46), name_len);
    pos += 46 + std::size_t{name_len} + extra_len + comment_len;

    if (!name.empty() && name.back() == '/') continue;
    try {
      if (flags & 0x1) throw ArchiveError("encrypted entry");
      if (le32(bytes, local) != kLocalFileHeader) throw ArchiveError("bad local header");
      std::size_t data_at = local + 30 + std::size_t{le16(bytes, local + 26)} + le16(bytes, local + 28);
      if (data_at + csize > bytes.size()) throw ArchiveError("entry data overruns archive");
      auto raw = bytes.subspan(data_at, csize);
      ArchiveEntry entry{name, {}};
      if (method == 0) {
        if (csize != usize) throw ArchiveError("stored entry size mismatch");
        entry.data.assign(raw.begin(), raw.end());
      } else if (method == 8) {
        entry.data = inflate_raw(raw, usize);
      } else {
        throw ArchiveError("unsupported compression method " + std::to_string(method));
      }
      auto actual = crc32(0L, entry.data.data(), static_cast<uInt>(entry.data.size()));
      if (actual != crc) throw ArchiveError("CRC mismatch");
      out.push_back(std::move(entry));
    } catch (const ArchiveError& e) {
      if (bad) bad->push_back(name + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read error on " + path);
  return data;
}

}  // namespace privflow
