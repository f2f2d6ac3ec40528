// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/image.hpp"

#include <fstream>
#include <string>

namespace ft3d {

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw std::invalid_argument("image dimensions must be non-negative");
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), data_(std::move(pixels)) {
  if (width < 0 || height < 0) throw std::invalid_argument("image dimensions must be non-negative");
  if (data_.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("pixel buffer length does not match width*height");
}

GrayImage decimate(const GrayImage& img, int factor) {
  if (factor < 1) throw std::invalid_argument("decimation factor must be >= 1");
  if (factor == 1) return img;
  const int w = (img.width() + factor - 1) / factor;
  const int h = (img.height() + factor - 1) / factor;
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.at(x, y) = img.at(x * factor, y * factor);
  return out;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.size()));
}

namespace {

int read_header_int(std::istream& in, const std::filesystem::path& path) {
  int value = 0;
  while (true) {
    in >> std::ws;
    if (in.peek() == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (!(in >> value)) throw std::runtime_error(path.string() + ": malformed PGM header");
    return value;
  }
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error(path.string() + ": not a binary PGM (P5) file");
  const int w = read_header_int(in, path);
  const int h = read_header_int(in, path);
  const int maxval = read_header_int(in, path);
  if (w <= 0 || h <= 0 || maxval != 255) throw std::runtime_error(path.string() + ": unsupported PGM geometry");
  in.get();  // single whitespace after maxval
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (in.gcount() != static_cast<std::streamsize>(data.size())) throw std::runtime_error(path.string() + ": truncated PGM");
  return GrayImage(w, h, std::move(data));
}

}  // namespace ft3d
