#pragma once

#include <string_view>

#include "univip/image.hpp"

namespace univip {

enum class TaskKind { Interpolation, Prediction };

std::string_view to_string(TaskKind kind);

/// Interpolation for t in [0,1] (bounds included), prediction otherwise.
TaskKind classify_task(double t);

/// Constant plane marking the task: 0 for interpolation, 1 for prediction.
class TaskChannel : public Plane<float> {
 public:
  using Plane<float>::Plane;
};

TaskChannel make_task_channel(TaskKind kind, int height, int width);

struct ConvertedRequest {
  Image i0;
  Image i1;
  double t = 0.0;
  bool converted = false;
};

/// Rewrites a past-frame request (t < 0) as a future-frame request on the
/// reversed pair at 1 - t. Other requests pass through unchanged.
ConvertedRequest convert_prediction(const Image& i0, const Image& i1, double t);

/// Just the time mapping of convert_prediction.
inline bool needs_conversion(double t) { return t < 0.0; }

}  // namespace univip
