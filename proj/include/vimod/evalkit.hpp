#pragma once

#include <string>
#include <vector>

#include "vimod/image.hpp"
#include "vimod/refine.hpp"

namespace vimod {

// Frames carry ground truth every annotation_stride frames; evaluation pools
// pixel counts over exactly those frames.
constexpr int kAnnotationStride = 5;

struct PrPoint {
  double threshold = 0.0;
  double precision = 1.0;
  double recall = 0.0;
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
};

// Points ordered by strictly increasing threshold; recall never increases
// along the list.
using PrCurve = std::vector<PrPoint>;

// 64 uniformly spaced thresholds spanning [0, 1].
std::vector<double> default_thresholds();

// One annotated frame's evaluation inputs. Pointers stay owned by the caller.
struct EvalFrame {
  int frame_index = 0;
  const ProbabilityMaps* maps = nullptr;
  const PixelMask* d_t = nullptr;
  const PixelMask* gt = nullptr;
};

// Binarizes every annotated frame (frame_index divisible by the stride) at
// each threshold through threshold_and_clean and pools TP/FP/FN. A selected
// frame without ground truth throws MissingGroundTruth, as does an empty
// selection. Empty predictions count as precision 1.
PrCurve precision_recall(const std::vector<EvalFrame>& frames,
                         const std::vector<double>& thresholds,
                         int annotation_stride = kAnnotationStride);

struct ErrorAt50 {
  double value = 1.0;        // 1 - precision at recall 0.5
  bool unreachable = false;  // max recall below 0.5
};

// Walks the curve to the operating point where recall crosses 0.5,
// interpolating precision linearly between the straddling thresholds.
ErrorAt50 error_at_50(const PrCurve& curve);

// Macro average across sequences; unreachable sequences count as the worst
// possible error, 1.
double macro_error_at_50(const std::vector<ErrorAt50>& errors);

double f1_score(long long tp, long long fp, long long fn);

struct SequenceEval {
  std::string name;
  PrCurve curve;
  ErrorAt50 err;
  double mean_fps = 0.0;       // 0 when unknown
  double peak_memory_mb = 0.0; // 0 when unknown
};

void write_pr_csv(const std::string& path, const PrCurve& curve);
PrCurve read_pr_csv(const std::string& path);

// CLI entry point: simgen | detect | eval | ablate | sweep.
// Returns 0 on success, 2 on usage errors, 1 on runtime errors.
int run_cli(int argc, const char* const* argv);

}  // namespace vimod
