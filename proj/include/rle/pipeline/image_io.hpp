// Copyright 2026 The RLE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// 8-bit PNG/JPEG codec glue. Ingestion maps a byte v to v / 255; export maps
// a value v to clamp(round(v * 255), 0, 255).

#include <csetjmp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"

namespace rle::pipeline {

template <std::floating_point T>
std::uint8_t to_byte(T v) {
  if (!(v > T{0})) return 0;
  const long r = std::lround(static_cast<double>(v) * 255.0);
  return static_cast<std::uint8_t>(r > 255 ? 255 : r);
}

template <std::floating_point T = double>
T from_byte(std::uint8_t b) {
  return static_cast<T>(b) / T{255};
}

/// Planar image from interleaved 8-bit samples.
inline Image from_interleaved(std::span<const std::uint8_t> px, std::size_t channels, std::size_t height,
                              std::size_t width) {
  Image img(channels, height, width);
  const std::size_t n = height * width;
  for (std::size_t c = 0; c < channels; ++c) {
    auto plane = img.plane(c);
    for (std::size_t i = 0; i < n; ++i) plane[i] = from_byte(px[i * channels + c]);
  }
  return img;
}

template <std::floating_point T>
std::vector<std::uint8_t> to_interleaved(const ImageTensor<T>& img) {
  const std::size_t channels = img.channels();
  const std::size_t n = img.plane_size();
  std::vector<std::uint8_t> px(n * channels);
  for (std::size_t c = 0; c < channels; ++c) {
    const auto plane = img.plane(c);
    for (std::size_t i = 0; i < n; ++i) px[i * channels + c] = to_byte(plane[i]);
  }
  return px;
}

namespace detail {

inline bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

inline bool is_jpeg(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

inline Image decode_png(std::span<const std::uint8_t> bytes, const std::string& name) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw IoError(name + ": " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> px(PNG_IMAGE_SIZE(image));
  // Transparent pixels are composited onto black.
  const png_color black{0, 0, 0};
  if (!png_image_finish_read(&image, &black, px.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError(name + ": " + msg);
  }
  return from_interleaved(px, color ? 3 : 1, image.height, image.width);
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

[[noreturn]] inline void jpeg_error_exit_to_jump(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, mgr->message);
  std::longjmp(mgr->jump, 1);
}

// No C++ objects with destructors may be created between setjmp and the end
// of the decode; `px` exists before setjmp and is only resized after it.
inline bool decode_jpeg_raw(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t>& px,
                            std::size_t& channels, std::size_t& height, std::size_t& width,
                            char (&message)[JMSG_LENGTH_MAX]) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit_to_jump;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    std::snprintf(message, JMSG_LENGTH_MAX, "%s", err.message);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);
  channels = static_cast<std::size_t>(cinfo.output_components);
  height = cinfo.output_height;
  width = cinfo.output_width;
  px.resize(channels * height * width);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = px.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * channels;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

inline Image decode_jpeg(std::span<const std::uint8_t> bytes, const std::string& name) {
  std::vector<std::uint8_t> px;
  std::size_t channels = 0, height = 0, width = 0;
  char message[JMSG_LENGTH_MAX] = {};
  if (!decode_jpeg_raw(bytes, px, channels, height, width, message)) throw IoError(name + ": " + message);
  if (channels != 1 && channels != 3) throw IoError(name + ": unsupported JPEG channel count");
  return from_interleaved(px, channels, height, width);
}

}  // namespace detail

/// Decodes an 8-bit PNG or JPEG, identified by its signature.
inline Image decode_image(std::span<const std::uint8_t> bytes, const std::string& name = "image") {
  if (detail::is_png(bytes)) return detail::decode_png(bytes, name);
  if (detail::is_jpeg(bytes)) return detail::decode_jpeg(bytes, name);
  throw IoError(name + ": not a PNG or JPEG file");
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

inline Image read_image(const std::filesystem::path& path) { return decode_image(read_file(path), path.string()); }

template <std::floating_point T>
std::vector<std::uint8_t> encode_png(const ImageTensor<T>& img) {
  const auto px = to_interleaved(img);
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, px.data(), 0, nullptr)) {
    throw IoError(std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, px.data(), 0, nullptr)) {
    throw IoError(std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

template <std::floating_point T>
void write_png(const std::filesystem::path& path, const ImageTensor<T>& img) {
  write_file(path, encode_png(img));
}

/// Baseline JPEG encode; used to produce test inputs and sample data.
template <std::floating_point T>
std::vector<std::uint8_t> encode_jpeg(const ImageTensor<T>& img, int quality = 95) {
  const auto px = to_interleaved(img);
  jpeg_compress_struct cinfo{};
  jpeg_error_mgr jerr{};
  cinfo.err = jpeg_std_error(&jerr);
  jpeg_create_compress(&cinfo);
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  jpeg_mem_dest(&cinfo, &buffer, &size);
  cinfo.image_width = static_cast<JDIMENSION>(img.width());
  cinfo.image_height = static_cast<JDIMENSION>(img.height());
  cinfo.input_components = static_cast<int>(img.channels());
  cinfo.in_color_space = img.channels() == 3 ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = img.width() * img.channels();
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* row = const_cast<JSAMPROW>(px.data() + static_cast<std::size_t>(cinfo.next_scanline) * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  std::vector<std::uint8_t> out(buffer, buffer + size);
  jpeg_destroy_compress(&cinfo);
  std::free(buffer);
  return out;
}

}  // namespace rle::pipeline
