#include "glow/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "glow/errors.hpp"

namespace glow {

double dynamic_range(const std::vector<float>& values, double floor) {
    if (values.empty()) throw invalid_input("dynamic_range of empty value set");
    if (floor <= 0.0) throw invalid_input("dynamic_range floor must be positive");
    double mn = values[0], mx = values[0];
    for (float v : values) {
        if (!std::isfinite(v) || v < 0.0f) throw invalid_input("dynamic_range needs finite non-negative values");
        mn = std::min(mn, static_cast<double>(v));
        mx = std::max(mx, static_cast<double>(v));
    }
    if (mx == 0.0) throw invalid_input("dynamic_range of all-zero values");
    return std::log2(std::max(mx, floor) / std::max(mn, floor));
}

double dynamic_range(const RadianceImage& img, double floor) {
    return dynamic_range(img.data, floor);
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw invalid_input("percentile of empty value set");
    if (!(q >= 0.0 && q <= 1.0)) throw invalid_input("percentile rank outside [0,1]");
    std::sort(values.begin(), values.end());
    const double rank = q * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(rank));
    const double frac = rank - static_cast<double>(lo);
    if (frac == 0.0) return values[lo];
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

DrStats dr_percentiles(const std::vector<double>& per_image_dr) {
    DrStats s;
    s.per_image = per_image_dr;
    s.dr50 = percentile(per_image_dr, 0.5);
    s.dr90 = percentile(per_image_dr, 0.9);
    return s;
}

double psnr(const std::vector<float>& a, const std::vector<float>& b, double peak) {
    if (a.size() != b.size() || a.empty()) throw invalid_input("psnr needs equal-size non-empty inputs");
    if (peak <= 0.0) throw invalid_input("psnr peak must be positive");
    double mse = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        mse += d * d;
    }
    mse /= static_cast<double>(a.size());
    if (mse == 0.0) return kPsnrCap;
    return std::min(10.0 * std::log10(peak * peak / mse), kPsnrCap);
}

double psnr(const LdrImage& a, const LdrImage& b, double peak) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw invalid_input("psnr inputs must share a shape");
    return psnr(a.data, b.data, peak);
}

double psnr(const RadianceImage& a, const RadianceImage& b, double peak) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw invalid_input("psnr inputs must share a shape");
    return psnr(a.data, b.data, peak);
}

double hist_chi2(const Histogram& a, const Histogram& b) {
    if (a.edges.size() != b.edges.size() || a.edges != b.edges)
        throw invalid_input("hist_chi2 needs identical bin edges");
    const double ta = static_cast<double>(a.total());
    const double tb = static_cast<double>(b.total());
    if (ta == 0.0 || tb == 0.0) throw invalid_input("hist_chi2 of empty histogram");
    double acc = 0.0;
    for (size_t i = 0; i < a.counts.size(); ++i) {
        const double p = static_cast<double>(a.counts[i]) / ta;
        const double q = static_cast<double>(b.counts[i]) / tb;
        if (p + q > 0.0) acc += (p - q) * (p - q) / (p + q);
    }
    return acc;
}

}  // namespace glow
