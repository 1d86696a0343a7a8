#include "fvc/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "fvc/errors.hpp"

namespace fvc {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Rgb8Image from_interleaved(const std::vector<std::uint8_t>& data, Index w,
                           Index h) {
  Rgb8Image img(w, h);
  for (Index y = 0; y < h; ++y) {
    const std::uint8_t* row = data.data() + static_cast<std::size_t>(y) * w * 3;
    for (Index x = 0; x < w; ++x) {
      img.at(x, y, 0) = row[3 * x];
      img.at(x, y, 1) = row[3 * x + 1];
      img.at(x, y, 2) = row[3 * x + 2];
    }
  }
  return img;
}

Rgb8Image load_png_file(std::FILE* f, const std::string& path) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png: out of memory reading " + path);
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png: out of memory reading " + path);
  }
  std::vector<std::uint8_t> data;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png: failed to decode " + path);
  }
  png_init_io(png, f);
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);

  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  data.resize(static_cast<std::size_t>(w) * h * 3);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = data.data() + static_cast<std::size_t>(y) * w * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return from_interleaved(data, static_cast<Index>(w), static_cast<Index>(h));
}

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  JpegErrorMgr* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(err->jump, 1);
}

Rgb8Image load_jpeg_file(std::FILE* f, const std::string& path) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  std::vector<std::uint8_t> data;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError("jpeg: failed to decode " + path);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const Index w = cinfo.output_width;
  const Index h = cinfo.output_height;
  data.resize(static_cast<std::size_t>(w) * h * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = data.data() +
                   static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_interleaved(data, w, h);
}

}  // namespace

Rgb8Image load_image(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw IoError("cannot open " + path);

  std::uint8_t magic[3] = {0, 0, 0};
  if (std::fread(magic, 1, 3, f.get()) != 3) {
    throw IoError("cannot read " + path);
  }
  std::rewind(f.get());

  if (magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N') {
    return load_png_file(f.get(), path);
  }
  if (magic[0] == 0xFF && magic[1] == 0xD8) {
    return load_jpeg_file(f.get(), path);
  }
  throw IoError("unsupported image format: " + path);
}

namespace {

void write_png_impl(const std::string& path, Index w, Index h, int channels,
                    const std::vector<std::uint8_t>& data) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw IoError("cannot write " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  if (!png) throw IoError("png: out of memory writing " + path);
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png: out of memory writing " + path);
  }
  std::vector<png_bytep> rows(h);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png: failed to encode " + path);
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(w),
               static_cast<png_uint_32>(h), 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  for (Index y = 0; y < h; ++y) {
    rows[y] = const_cast<png_bytep>(
        data.data() + static_cast<std::size_t>(y) * w * channels);
  }
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void save_png(const std::string& path, const Rgb8Image& img) {
  std::vector<std::uint8_t> data(
      static_cast<std::size_t>(img.width()) * img.height() * 3);
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      const std::size_t base =
          (static_cast<std::size_t>(y) * img.width() + x) * 3;
      data[base] = img.at(x, y, 0);
      data[base + 1] = img.at(x, y, 1);
      data[base + 2] = img.at(x, y, 2);
    }
  }
  write_png_impl(path, img.width(), img.height(), 3, data);
}

void save_png(const std::string& path, const GrayImage& img) {
  std::vector<std::uint8_t> data(
      static_cast<std::size_t>(img.width()) * img.height());
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      data[static_cast<std::size_t>(y) * img.width() + x] = img.at(x, y);
    }
  }
  write_png_impl(path, img.width(), img.height(), 1, data);
}

}  // namespace fvc
