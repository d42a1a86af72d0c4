// Copyright 2026 The invsynth Authors
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

#include "invsynth/image.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <memory>

#include "invsynth/error.hpp"

namespace invsynth {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw ImageError("image dimensions must be positive, got " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
}

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};

/// Writes one 8-bit image with fixed encoder settings.
void write_png_rows(const std::filesystem::path& path, int width, int height,
                    int color_type, int channels, const std::uint8_t* data) {
  auto tmp = path;
  tmp += ".tmp";
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(tmp.c_str(), "wb"));
  if (!file) throw ImageError("cannot open " + tmp.string() + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  if (png == nullptr) throw ImageError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw ImageError("png_create_info_struct failed");
  }
  std::vector<png_const_bytep> rows(static_cast<std::size_t>(height));
  const auto stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] = data + stride * static_cast<std::size_t>(y);
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    file.reset();
    std::filesystem::remove(tmp);
    throw ImageError("failed to encode " + path.string());
  }
  png_init_io(png, file.get());
  png_set_compression_level(png, 6);
  png_set_compression_mem_level(png, 8);
  png_set_compression_strategy(png, 0);  // Z_DEFAULT_STRATEGY
  png_set_compression_window_bits(png, 15);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_ALL_FILTERS);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE,
               PNG_FILTER_TYPE_BASE);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) throw ImageError("failed to write " + tmp.string());
  file.reset();

  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ImageError("cannot move " + tmp.string() + " into place");
}

}  // namespace

RasterImage::RasterImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
    throw ImageError("pixel buffer length does not match " + std::to_string(width) +
                     "x" + std::to_string(height) + "x3");
  }
}

Mask::Mask(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), kKeep);
}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](std::uint8_t v) { return v != kKeep; }));
}

RasterImage read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw ImageError("cannot read PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  png_color background{255, 255, 255};
  if (!png_image_finish_read(&image, &background, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw ImageError("cannot decode PNG " + path.string() + ": " + message);
  }
  const auto w = static_cast<int>(image.width);
  const auto h = static_cast<int>(image.height);
  png_image_free(&image);
  return RasterImage(w, h, std::move(pixels));
}

void write_png(const std::filesystem::path& path, const RasterImage& image) {
  check_dims(image.width(), image.height());
  write_png_rows(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 3,
                 image.pixels().data());
}

void write_mask_png(const std::filesystem::path& path, const Mask& mask) {
  check_dims(mask.width(), mask.height());
  write_png_rows(path, mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, 1,
                 mask.values().data());
}

}  // namespace invsynth
