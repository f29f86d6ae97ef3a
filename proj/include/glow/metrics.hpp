#pragma once

#include <vector>

#include "glow/image.hpp"

namespace glow {

/// Floor for 8-bit content: one quantization step.
inline constexpr double kLdrFloor = 1.0 / 255.0;

/// log2(max(v_max, floor) / max(v_min, floor)) over every value of the image.
/// Throws invalid_input if all values are zero (no signal to measure).
double dynamic_range(const std::vector<float>& values, double floor = kLogFloor);
double dynamic_range(const RadianceImage& img, double floor = kLogFloor);

/// Order statistic with linear interpolation at rank q*(n-1), q in [0,1].
double percentile(std::vector<double> values, double q);

/// Percentiles of per-image dynamic range over a sample set.
struct DrStats {
    std::vector<double> per_image;
    double dr50 = 0.0;
    double dr90 = 0.0;
};
DrStats dr_percentiles(const std::vector<double>& per_image_dr);

/// 10*log10(peak^2 / mse) over all values, capped at 99 dB (also the value
/// for identical inputs).
double psnr(const std::vector<float>& a, const std::vector<float>& b, double peak = 1.0);
double psnr(const LdrImage& a, const LdrImage& b, double peak = 1.0);
double psnr(const RadianceImage& a, const RadianceImage& b, double peak = 1.0);

inline constexpr double kPsnrCap = 99.0;

/// Symmetric chi-squared distance sum((p-q)^2/(p+q)) between two histograms
/// with identical edges, after normalizing counts to probabilities.
/// Fully disjoint histograms score 2.
double hist_chi2(const Histogram& a, const Histogram& b);

}  // namespace glow
