// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// RIFF/WAVE ingest: PCM 8/16-bit integer and 32-bit IEEE float, mono or
// multichannel (averaged down to mono). Plus a 16-bit PCM writer for the
// synthetic corpus and round-trip tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "zharec/errors.hpp"

namespace zharec {

// A decoded audio signal. Samples are normalized to [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = 16000;
  std::string label;  // optional class tag, e.g. "zha", "la", "lla"
};

namespace detail {

inline std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace detail

// Decodes a RIFF/WAVE file. Multichannel input is averaged to mono; no
// resampling is performed (the sample rate is reported as found).
//
// Throws IoError, MalformedHeader, UnsupportedEncoding, or EmptyAudio.
inline AudioClip load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_wav: cannot open file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw MalformedHeader("load_wav: not a RIFF/WAVE file: " + path);
  }

  std::uint16_t audio_format = 0;
  std::uint16_t num_channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    std::uint32_t chunk_size = detail::read_u32le(chunk + 4);
    std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (body + 16 > bytes.size()) throw MalformedHeader("load_wav: truncated fmt chunk");
      audio_format = detail::read_u16le(chunk + 8);
      num_channels = detail::read_u16le(chunk + 10);
      sample_rate = detail::read_u32le(chunk + 12);
      bits_per_sample = detail::read_u16le(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + chunk_size > bytes.size()) chunk_size = static_cast<std::uint32_t>(bytes.size() - body);
      data = bytes.data() + body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) throw MalformedHeader("load_wav: missing fmt chunk: " + path);
  if (num_channels == 0 || sample_rate == 0) {
    throw MalformedHeader("load_wav: nonsense fmt fields: " + path);
  }

  const bool pcm_int = audio_format == 1 && (bits_per_sample == 8 || bits_per_sample == 16);
  const bool pcm_float = audio_format == 3 && bits_per_sample == 32;
  if (!pcm_int && !pcm_float) {
    throw UnsupportedEncoding("load_wav: unsupported encoding (format " +
                              std::to_string(audio_format) + ", " +
                              std::to_string(bits_per_sample) + " bits): " + path);
  }

  const std::size_t bytes_per_sample = bits_per_sample / 8;
  const std::size_t frame_bytes = bytes_per_sample * num_channels;
  const std::size_t n = frame_bytes ? data_size / frame_bytes : 0;
  if (n == 0) throw EmptyAudio("load_wav: no samples: " + path);

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(sample_rate);
  clip.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::uint16_t ch = 0; ch < num_channels; ++ch) {
      const unsigned char* p = data + i * frame_bytes + ch * bytes_per_sample;
      if (pcm_float) {
        float v;
        std::memcpy(&v, p, 4);
        acc += v;
      } else if (bits_per_sample == 16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        acc += v / 32768.0;
      } else {  // 8-bit PCM is unsigned
        acc += (static_cast<int>(*p) - 128) / 128.0;
      }
    }
    clip.samples[i] = std::clamp(acc / num_channels, -1.0, 1.0);
  }
  return clip;
}

// Writes a mono 16-bit PCM file. Samples are rounded with clamping, so
// inputs in [-1, 1] survive a write/load cycle to within 1/32768.
inline void write_wav_pcm16(const std::string& path, const AudioClip& clip) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_wav_pcm16: cannot open file for writing: " + path);

  const std::uint32_t n = static_cast<std::uint32_t>(clip.samples.size());
  const std::uint32_t data_bytes = n * 2;
  const std::uint32_t sr = static_cast<std::uint32_t>(clip.sample_rate_hz);

  auto put_u32 = [&out](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
  };
  auto put_u16 = [&out](std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 2);
  };

  out.write("RIFF", 4);
  put_u32(36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16);
  put_u16(1);         // PCM
  put_u16(1);         // mono
  put_u32(sr);
  put_u32(sr * 2);    // byte rate
  put_u16(2);         // block align
  put_u16(16);        // bits per sample
  out.write("data", 4);
  put_u32(data_bytes);

  for (double s : clip.samples) {
    long v = std::lrint(s * 32768.0);
    v = std::clamp(v, -32768L, 32767L);
    put_u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!out) throw IoError("write_wav_pcm16: write failed: " + path);
}

}  // namespace zharec
