#include "univip/tasking.hpp"

#include <cmath>

namespace univip {

std::string_view to_string(TaskKind kind) {
  return kind == TaskKind::Interpolation ? "interpolation" : "prediction";
}

TaskKind classify_task(double t) {
  if (!std::isfinite(t)) fail(ErrorKind::InvalidInput, "time step must be finite");
  return (t >= 0.0 && t <= 1.0) ? TaskKind::Interpolation : TaskKind::Prediction;
}

TaskChannel make_task_channel(TaskKind kind, int height, int width) {
  if (height <= 0 || width <= 0) {
    fail(ErrorKind::InvalidInput, "task channel dimensions must be positive");
  }
  return TaskChannel(width, height, kind == TaskKind::Prediction ? 1.0f : 0.0f);
}

ConvertedRequest convert_prediction(const Image& i0, const Image& i1, double t) {
  if (!std::isfinite(t)) fail(ErrorKind::InvalidInput, "time step must be finite");
  if (needs_conversion(t)) return {i1, i0, 1.0 - t, true};
  return {i0, i1, t, false};
}

}  // namespace univip
