// sfdi/audio_io.hpp

// Copyright 2026  SFDI toolkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sfdi/audio.hpp"
#include "sfdi/errors.hpp"

namespace sfdi {

namespace detail {

inline std::vector<char> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return bytes;
}

inline std::uint32_t read_u32le(const char* p) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint16_t read_u16le(const char* p) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint16_t>(static_cast<std::uint16_t>(b[0]) |
                                    (static_cast<std::uint16_t>(b[1]) << 8));
}

inline std::int16_t decode_i16(const char* p, bool little_endian) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  const std::uint16_t u = little_endian
                              ? static_cast<std::uint16_t>(b[0] | (b[1] << 8))
                              : static_cast<std::uint16_t>(b[1] | (b[0] << 8));
  return static_cast<std::int16_t>(u);
}

// PCM payload -> normalized samples; -32768 maps to -1.0, +32767 to 32767/32768.
inline std::vector<double> decode_pcm16(const char* data, std::size_t count,
                                        bool little_endian) {
  std::vector<double> samples(count);
  for (std::size_t i = 0; i < count; ++i)
    samples[i] = static_cast<double>(decode_i16(data + 2 * i, little_endian)) / 32768.0;
  return samples;
}

inline AudioBuffer read_sphere(const std::vector<char>& bytes, const std::string& name) {
  if (bytes.size() < 16) throw CorruptFile(name + ": truncated SPHERE header");
  std::string head(bytes.begin(), bytes.begin() + 16);
  std::istringstream head_in(head);
  std::string magic, size_line;
  std::getline(head_in, magic);
  std::getline(head_in, size_line);
  std::size_t header_size = 0;
  try {
    header_size = static_cast<std::size_t>(std::stoul(size_line));
  } catch (const std::exception&) {
    throw CorruptFile(name + ": unreadable SPHERE header size");
  }
  if (header_size < 16 || bytes.size() < header_size)
    throw CorruptFile(name + ": SPHERE header size exceeds file size");

  // "name -i value" / "name -sN value" / "name -rX value" lines up to end_head.
  std::map<std::string, std::string> fields;
  std::istringstream hdr(std::string(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(header_size)));
  std::string line;
  std::getline(hdr, line);  // NIST_1A
  std::getline(hdr, line);  // header size
  while (std::getline(hdr, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "end_head") break;
    if (line.empty()) continue;
    std::istringstream fl(line);
    std::string key, type, value;
    fl >> key >> type >> value;
    if (key.empty() || type.empty()) continue;
    fields[key] = value;
  }

  auto int_field = [&](const std::string& key, long def, bool required) -> long {
    auto it = fields.find(key);
    if (it == fields.end()) {
      if (required) throw CorruptFile(name + ": SPHERE header missing " + key);
      return def;
    }
    try {
      return std::stol(it->second);
    } catch (const std::exception&) {
      throw CorruptFile(name + ": bad SPHERE field " + key);
    }
  };

  if (auto it = fields.find("sample_coding");
      it != fields.end() && it->second != "pcm")
    throw UnsupportedFormat(name + ": SPHERE sample_coding '" + it->second +
                            "' (only plain pcm is supported)");

  const long channels = int_field("channel_count", 1, false);
  if (channels != 1)
    throw UnsupportedChannels(name + ": " + std::to_string(channels) + " channels");
  const long bytes_per_sample = int_field("sample_n_bytes", 2, false);
  if (bytes_per_sample != 2)
    throw UnsupportedFormat(name + ": SPHERE sample_n_bytes " +
                            std::to_string(bytes_per_sample));
  const long rate = int_field("sample_rate", 0, true);
  if (rate <= 0) throw CorruptFile(name + ": nonpositive SPHERE sample_rate");
  const long count = int_field("sample_count", 0, true);
  if (count < 0) throw CorruptFile(name + ": negative SPHERE sample_count");

  bool little_endian = true;
  if (auto it = fields.find("sample_byte_format"); it != fields.end()) {
    if (it->second == "01") little_endian = true;
    else if (it->second == "10") little_endian = false;
    else throw UnsupportedFormat(name + ": SPHERE sample_byte_format '" + it->second + "'");
  }

  const std::size_t need = static_cast<std::size_t>(count) * 2;
  if (bytes.size() < header_size + need)
    throw CorruptFile(name + ": SPHERE data truncated (" +
                      std::to_string(bytes.size() - header_size) + " of " +
                      std::to_string(need) + " bytes)");

  AudioBuffer buffer;
  buffer.sample_rate_hz = static_cast<int>(rate);
  buffer.samples = decode_pcm16(bytes.data() + header_size,
                                static_cast<std::size_t>(count), little_endian);
  return buffer;
}

inline AudioBuffer read_riff_wav(const std::vector<char>& bytes, const std::string& name) {
  if (bytes.size() < 12 || std::string(bytes.data() + 8, 4) != "WAVE")
    throw UnsupportedFormat(name + ": not a WAVE file");

  bool have_fmt = false;
  std::uint16_t audio_format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string chunk_id(bytes.data() + pos, 4);
    const std::uint32_t chunk_size = read_u32le(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (chunk_id == "fmt ") {
      if (chunk_size < 16 || body + 16 > bytes.size())
        throw CorruptFile(name + ": truncated fmt chunk");
      audio_format = read_u16le(bytes.data() + body);
      channels = read_u16le(bytes.data() + body + 2);
      rate = read_u32le(bytes.data() + body + 4);
      bits = read_u16le(bytes.data() + body + 14);
      have_fmt = true;
    } else if (chunk_id == "data") {
      if (!have_fmt) throw CorruptFile(name + ": data chunk before fmt chunk");
      if (audio_format != 1)
        throw UnsupportedFormat(name + ": WAVE format tag " + std::to_string(audio_format) +
                                " (only integer PCM is supported)");
      if (channels != 1)
        throw UnsupportedChannels(name + ": " + std::to_string(channels) + " channels");
      if (bits != 16)
        throw UnsupportedFormat(name + ": " + std::to_string(bits) + "-bit samples");
      if (rate == 0) throw CorruptFile(name + ": zero sample rate");
      if (body + chunk_size > bytes.size())
        throw CorruptFile(name + ": data chunk truncated (" +
                          std::to_string(bytes.size() - body) + " of " +
                          std::to_string(chunk_size) + " bytes)");
      AudioBuffer buffer;
      buffer.sample_rate_hz = static_cast<int>(rate);
      buffer.samples = decode_pcm16(bytes.data() + body, chunk_size / 2, true);
      return buffer;
    }
    // Chunks are word aligned.
    pos = body + chunk_size + (chunk_size % 2);
  }
  throw CorruptFile(name + ": no data chunk found");
}

}  // namespace detail

/// Reads a mono 16-bit PCM file, NIST SPHERE or RIFF WAVE, sniffed by
/// magic bytes. Samples come back normalized by 1/32768.
inline AudioBuffer read_audio(const std::filesystem::path& path) {
  std::vector<char> bytes = detail::read_file_bytes(path);
  const std::string name = path.string();
  if (bytes.size() >= 7 && std::string(bytes.data(), 7) == "NIST_1A")
    return detail::read_sphere(bytes, name);
  if (bytes.size() >= 4 && std::string(bytes.data(), 4) == "RIFF")
    return detail::read_riff_wav(bytes, name);
  throw UnsupportedFormat(name + ": unknown magic bytes");
}

/// Writes a canonical 16-bit PCM mono RIFF WAVE file. Values are scaled by
/// 32768, rounded, and clipped to the int16 range, so buffers read with
/// read_audio round-trip bit-exactly.
inline void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer) {
  if (buffer.sample_rate_hz <= 0) throw Error("write_wav: nonpositive sample rate");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");

  const std::uint32_t data_bytes = static_cast<std::uint32_t>(buffer.samples.size() * 2);
  auto put_u32 = [&](std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
  };
  auto put_u16 = [&](std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
  };

  out.write("RIFF", 4);
  put_u32(36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16);
  put_u16(1);  // integer PCM
  put_u16(1);  // mono
  put_u32(static_cast<std::uint32_t>(buffer.sample_rate_hz));
  put_u32(static_cast<std::uint32_t>(buffer.sample_rate_hz) * 2);
  put_u16(2);   // block align
  put_u16(16);  // bits per sample
  out.write("data", 4);
  put_u32(data_bytes);
  for (double s : buffer.samples) {
    long v = std::lround(s * 32768.0);
    if (v < -32768) v = -32768;
    if (v > 32767) v = 32767;
    put_u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace sfdi
