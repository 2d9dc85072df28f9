#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "univip/image.hpp"
#include "univip/scenegen.hpp"

namespace univip {

namespace fs = std::filesystem;

/// 8-bit grayscale or RGB PNG, values mapped by v / 255. Interlaced, 16-bit,
/// palette and alpha variants are rejected with UnsupportedFormat.
Image read_image(const fs::path& path);

/// Writes 8-bit PNG; codes are round-half-up of v * 255 after clamping.
void write_image(const Image& img, const fs::path& path);

/// Single-plane helper: masks become 0/255, other planes are clamped to [0,1].
void write_mask(const Plane<std::uint8_t>& mask, const fs::path& path);

inline constexpr float kFloMagic = 202021.25f;

/// Middlebury .flo: float magic, int32 width, int32 height, then row-major
/// interleaved (dx, dy) float32, all little-endian.
FlowField read_flo(const fs::path& path);
void write_flo(const FlowField& flow, const fs::path& path);

struct TripletRecord {
  fs::path directory;
  std::string first = "im1.png";
  std::string middle = "im2.png";
  std::string last = "im3.png";
  TripletRole role = TripletRole::Interp;
  std::optional<double> t;
  std::optional<fs::path> flow01;
  std::optional<fs::path> flow10;

  /// Target time: the override when present, else the role's time.
  double time() const;
};

struct ScanWarning {
  fs::path directory;
  std::string message;
};

struct ScanResult {
  std::vector<TripletRecord> records;
  std::vector<ScanWarning> warnings;
};

/// Treats each immediate subdirectory of `root` as a triplet folder holding
/// im1/im2/im3.png and optional flow01/flow10.flo. Folders are visited in
/// lexicographic order; invalid ones are skipped and reported as warnings.
ScanResult scan_dataset(const fs::path& root, TripletRole role);

struct TripletFrames {
  Image i0;
  Image i1;
  Image target;
  double t = 0.0;
};

/// Loads the frames of a record, placing them by role: interp is
/// (I0, target, I1), next-pred (I0, I1, target), prev-pred (target, I0, I1).
TripletFrames load_triplet(const TripletRecord& record);

/// Line-delimited JSON, one record per line with keys "role", "dir" and the
/// optional "t", "frames" (three filenames), "flow01", "flow10". Relative
/// paths resolve against the manifest's directory. Blank lines are skipped.
std::vector<TripletRecord> read_manifest(const fs::path& path);
void write_manifest(const std::vector<TripletRecord>& records, const fs::path& path);

}  // namespace univip
