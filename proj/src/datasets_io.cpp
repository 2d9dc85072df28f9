#include "univip/datasets_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "json.hpp"

namespace univip {
namespace {

static_assert(std::endian::native == std::endian::little,
              "flow I/O assumes a little-endian host");

using File = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

File open_file(const fs::path& path, const char* mode) {
  return File(std::fopen(path.string().c_str(), mode), &std::fclose);
}

void require_exists(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    fail(ErrorKind::FileMissing, "file not found: " + path.string());
  }
}

std::uint8_t quantize(double v) {
  const double scaled = std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

struct PngReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  ~PngReadState() { png_destroy_read_struct(&png, &info, nullptr); }
};

void png_warning_sink(png_structp, png_const_charp) {}

void write_png_rows(const std::vector<std::uint8_t>& pixels, int width, int height, int channels,
                    const fs::path& path) {
  File file = open_file(path, "wb");
  if (!file) fail(ErrorKind::IoFailure, "cannot open for writing: " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warning_sink);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::IoFailure, "libpng initialization failed");
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] =
        const_cast<png_bytep>(pixels.data() + static_cast<std::size_t>(y) * width * channels);
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::IoFailure, "failed writing PNG: " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

Image read_image(const fs::path& path) {
  require_exists(path);
  File file = open_file(path, "rb");
  if (!file) fail(ErrorKind::IoFailure, "cannot open: " + path.string());

  png_byte signature[8] = {};
  if (std::fread(signature, 1, sizeof signature, file.get()) != sizeof signature ||
      png_sig_cmp(signature, 0, sizeof signature) != 0) {
    fail(ErrorKind::MalformedHeader, "not a PNG file: " + path.string());
  }

  PngReadState state;
  state.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warning_sink);
  if (!state.png) fail(ErrorKind::IoFailure, "libpng initialization failed");
  state.info = png_create_info_struct(state.png);
  if (!state.info) fail(ErrorKind::IoFailure, "libpng initialization failed");

  // Locals touched after setjmp are volatile or live outside this frame.
  volatile bool header_done = false;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  int interlace = 0;

  if (setjmp(png_jmpbuf(state.png))) {
    if (!header_done) fail(ErrorKind::MalformedHeader, "corrupt PNG header: " + path.string());
    fail(ErrorKind::TruncatedPayload, "corrupt or truncated PNG data: " + path.string());
  }
  png_init_io(state.png, file.get());
  png_set_sig_bytes(state.png, sizeof signature);
  png_read_info(state.png, state.info);
  png_get_IHDR(state.png, state.info, &width, &height, &bit_depth, &color_type, &interlace,
               nullptr, nullptr);
  header_done = true;

  if (bit_depth != 8) {
    fail(ErrorKind::UnsupportedFormat,
         "unsupported PNG bit depth " + std::to_string(bit_depth) + ": " + path.string());
  }
  if (interlace != PNG_INTERLACE_NONE) {
    fail(ErrorKind::UnsupportedFormat, "interlaced PNG not supported: " + path.string());
  }
  if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
    fail(ErrorKind::UnsupportedFormat,
         "unsupported PNG color type (only 8-bit gray or RGB): " + path.string());
  }
  const int channels = color_type == PNG_COLOR_TYPE_GRAY ? 1 : 3;
  if (width == 0 || height == 0 || width > (1u << 15) || height > (1u << 15)) {
    fail(ErrorKind::MalformedHeader, "implausible PNG dimensions: " + path.string());
  }

  auto& pixels = state.pixels;
  pixels.resize(static_cast<std::size_t>(width) * height * channels);
  state.rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    state.rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
  }
  png_read_image(state.png, state.rows.data());
  png_read_end(state.png, nullptr);

  Image img(static_cast<int>(width), static_cast<int>(height), channels);
  auto values = img.values();
  for (std::size_t i = 0; i < pixels.size(); ++i) values[i] = pixels[i] / 255.0;
  return img;
}

void write_image(const Image& img, const fs::path& path) {
  if (img.empty()) fail(ErrorKind::InvalidInput, "write_image: empty image");
  std::vector<std::uint8_t> pixels(img.values().size());
  const auto values = img.values();
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = quantize(values[i]);
  write_png_rows(pixels, img.width(), img.height(), img.channels(), path);
}

void write_mask(const Plane<std::uint8_t>& mask, const fs::path& path) {
  std::vector<std::uint8_t> pixels(mask.size());
  const auto values = mask.values();
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = values[i] ? 255 : 0;
  write_png_rows(pixels, mask.width(), mask.height(), 1, path);
}

FlowField read_flo(const fs::path& path) {
  require_exists(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoFailure, "cannot open: " + path.string());

  float magic = 0.0f;
  std::int32_t width = 0;
  std::int32_t height = 0;
  if (!in.read(reinterpret_cast<char*>(&magic), sizeof magic)) {
    fail(ErrorKind::TruncatedPayload, "flow file too short: " + path.string());
  }
  if (std::memcmp(&magic, &kFloMagic, sizeof magic) != 0) {
    fail(ErrorKind::WrongMagic, "bad .flo magic: " + path.string());
  }
  if (!in.read(reinterpret_cast<char*>(&width), sizeof width) ||
      !in.read(reinterpret_cast<char*>(&height), sizeof height)) {
    fail(ErrorKind::TruncatedPayload, "flow header truncated: " + path.string());
  }
  if (width <= 0 || height <= 0 || width > (1 << 15) || height > (1 << 15)) {
    fail(ErrorKind::MalformedHeader, "implausible .flo dimensions: " + path.string());
  }
  FlowField flow(width, height);
  auto values = flow.values();
  const auto bytes = static_cast<std::streamsize>(values.size() * sizeof(float));
  if (!in.read(reinterpret_cast<char*>(values.data()), bytes)) {
    fail(ErrorKind::TruncatedPayload, "flow payload truncated: " + path.string());
  }
  return flow;
}

void write_flo(const FlowField& flow, const fs::path& path) {
  if (flow.empty()) fail(ErrorKind::InvalidInput, "write_flo: empty flow");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoFailure, "cannot open for writing: " + path.string());
  const std::int32_t width = flow.width();
  const std::int32_t height = flow.height();
  out.write(reinterpret_cast<const char*>(&kFloMagic), sizeof kFloMagic);
  out.write(reinterpret_cast<const char*>(&width), sizeof width);
  out.write(reinterpret_cast<const char*>(&height), sizeof height);
  const auto values = flow.values();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
  if (!out) fail(ErrorKind::IoFailure, "failed writing: " + path.string());
}

double TripletRecord::time() const { return t ? *t : role_time(role); }

ScanResult scan_dataset(const fs::path& root, TripletRole role) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    fail(ErrorKind::FileMissing, "dataset root not found: " + root.string());
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().generic_string() < b.filename().generic_string();
  });

  ScanResult result;
  for (const fs::path& dir : dirs) {
    TripletRecord record;
    record.directory = dir;
    record.role = role;
    try {
      const Image a = read_image(dir / record.first);
      const Image b = read_image(dir / record.middle);
      const Image c = read_image(dir / record.last);
      if (!a.same_shape(b) || !a.same_shape(c)) {
        fail(ErrorKind::InvalidInput, "frames differ in shape");
      }
      for (auto [name, slot] : {std::pair{"flow01.flo", &record.flow01},
                                std::pair{"flow10.flo", &record.flow10}}) {
        const fs::path p = dir / name;
        if (!fs::exists(p)) continue;
        const FlowField f = read_flo(p);
        if (!f.same_size(a.width(), a.height())) fail(ErrorKind::InvalidInput, "flow size differs");
        *slot = p;
      }
      result.records.push_back(std::move(record));
    } catch (const Error& e) {
      result.warnings.push_back({dir, e.what()});
    }
  }
  return result;
}

TripletFrames load_triplet(const TripletRecord& record) {
  Image a = read_image(record.directory / record.first);
  Image b = read_image(record.directory / record.middle);
  Image c = read_image(record.directory / record.last);
  if (!a.same_shape(b) || !a.same_shape(c)) {
    fail(ErrorKind::InvalidInput, "triplet frames differ in shape: " + record.directory.string());
  }
  const double t = record.time();
  switch (record.role) {
    case TripletRole::Interp: return {std::move(a), std::move(c), std::move(b), t};
    case TripletRole::NextPred: return {std::move(a), std::move(b), std::move(c), t};
    case TripletRole::PrevPred: return {std::move(b), std::move(c), std::move(a), t};
  }
  return {std::move(a), std::move(c), std::move(b), t};
}

std::vector<TripletRecord> read_manifest(const fs::path& path) {
  require_exists(path);
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoFailure, "cannot open: " + path.string());
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path rel(p);
    return rel.is_absolute() ? rel : base / rel;
  };

  std::vector<TripletRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::MalformedHeader, where + ": " + e.what());
    }
    try {
      TripletRecord r;
      r.role = parse_role(j.at("role").get<std::string>());
      r.directory = resolve(j.at("dir").get<std::string>());
      if (j.contains("t")) r.t = j.at("t").get<double>();
      if (j.contains("frames")) {
        const auto frames = j.at("frames").get<std::vector<std::string>>();
        if (frames.size() != 3) fail(ErrorKind::InvalidInput, "\"frames\" needs three names");
        r.first = frames[0];
        r.middle = frames[1];
        r.last = frames[2];
      }
      if (j.contains("flow01")) r.flow01 = resolve(j.at("flow01").get<std::string>());
      if (j.contains("flow10")) r.flow10 = resolve(j.at("flow10").get<std::string>());
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::MalformedHeader, where + ": " + e.what());
    } catch (const Error& e) {
      fail(ErrorKind::MalformedHeader, where + ": " + e.what());
    }
  }
  return records;
}

void write_manifest(const std::vector<TripletRecord>& records, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorKind::IoFailure, "cannot open for writing: " + path.string());
  const fs::path base = path.parent_path();
  auto rel = [&](const fs::path& p) { return fs::relative(p, base).generic_string(); };
  for (const TripletRecord& r : records) {
    nlohmann::ordered_json j;
    j["role"] = std::string(to_string(r.role));
    j["dir"] = rel(r.directory);
    if (r.t) j["t"] = *r.t;
    if (r.first != "im1.png" || r.middle != "im2.png" || r.last != "im3.png") {
      j["frames"] = {r.first, r.middle, r.last};
    }
    if (r.flow01) j["flow01"] = rel(*r.flow01);
    if (r.flow10) j["flow10"] = rel(*r.flow10);
    out << j.dump() << '\n';
  }
  if (!out) fail(ErrorKind::IoFailure, "failed writing: " + path.string());
}

}  // namespace univip
