#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace glow {

/// Linear HDR raster. Values are relative radiance: finite, >= 0, unbounded
/// above. Row-major, top-down, interleaved channels (1 or 3).
struct RadianceImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    RadianceImage() = default;
    RadianceImage(int w, int h, int c, float fill = 0.0f);

    float& at(int x, int y, int c) { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }
    float at(int x, int y, int c) const { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }
    size_t value_count() const { return data.size(); }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }

    /// Throws invalid_input if a value is negative or non-finite, or the
    /// buffer size disagrees with the dimensions.
    void validate() const;
};

/// Display-referred raster, values in [0, 1]. Same layout as RadianceImage.
struct LdrImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    LdrImage() = default;
    LdrImage(int w, int h, int c, float fill = 0.0f);

    float& at(int x, int y, int c) { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }
    float at(int x, int y, int c) const { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }
    size_t value_count() const { return data.size(); }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }

    void validate() const;
};

enum class HistScale { Linear, Log2 };

/// Value histogram over all channels. For Log2 the edges live in the log2
/// domain and zeros are floored at 2^-16 before binning.
struct Histogram {
    HistScale scale = HistScale::Linear;
    std::vector<double> edges;        // bins+1, strictly increasing
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const;
};

/// Floor applied to zero values before log2 binning (and to HDR dynamic
/// range); below any radiance the pipeline produces.
inline constexpr double kLogFloor = 1.0 / 65536.0;  // 2^-16

// --- PFM (32-bit float, "PF" RGB / "Pf" gray, little-endian rows bottom-up)

RadianceImage read_pfm(const std::string& path);
void write_pfm(const RadianceImage& img, const std::string& path);

// --- PPM (binary P6, maxval 255)
//
// Quantization on write is q = round(255*v) with round-half-up;
// dequantization on read is v = q/255.

LdrImage read_ppm(const std::string& path);
void write_ppm(const LdrImage& img, const std::string& path);

std::uint8_t quantize8(float v);
float dequantize8(std::uint8_t q);

/// Re-quantizes an LDR image to the 8-bit lattice without touching disk.
LdrImage quantize_ldr(const LdrImage& img);

// --- Histograms

Histogram histogram(const std::vector<float>& values, HistScale scale, int bins);
Histogram histogram(const RadianceImage& img, HistScale scale, int bins);
Histogram histogram(const LdrImage& img, HistScale scale, int bins);

/// Histogram over caller-fixed edges [lo, hi]; needed when two histograms
/// must share bins. Out-of-range values clamp into the end bins.
Histogram histogram_range(const std::vector<float>& values, HistScale scale, int bins,
                          double lo, double hi);

/// CSV rows "edge_lo,edge_hi,count" (edges in the binned domain).
void write_histogram_csv(const Histogram& h, const std::string& path);

}  // namespace glow
