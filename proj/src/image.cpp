#include "glow/image.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "glow/errors.hpp"

namespace glow {

namespace {

void check_dims(int w, int h, int c) {
    if (w <= 0 || h <= 0) throw invalid_input("image dimensions must be positive");
    if (c != 1 && c != 3) throw invalid_input("image must have 1 or 3 channels");
}

float byteswap_float(float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    u = ((u & 0xff000000u) >> 24) | ((u & 0x00ff0000u) >> 8) |
        ((u & 0x0000ff00u) << 8) | ((u & 0x000000ffu) << 24);
    std::memcpy(&v, &u, 4);
    return v;
}

// PFM headers are whitespace-separated tokens; '#' comments are not part of
// the format and are rejected implicitly by token parsing.
std::string next_token(std::istream& in) {
    std::string tok;
    if (!(in >> tok)) throw invalid_input("truncated header");
    return tok;
}

int parse_dim(const std::string& tok) {
    size_t pos = 0;
    int v;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw invalid_input("bad dimension '" + tok + "'");
    }
    if (pos != tok.size() || v <= 0) throw invalid_input("bad dimension '" + tok + "'");
    return v;
}

}  // namespace

RadianceImage::RadianceImage(int w, int h, int c, float fill) {
    check_dims(w, h, c);
    width = w;
    height = h;
    channels = c;
    data.assign(static_cast<size_t>(w) * h * c, fill);
}

void RadianceImage::validate() const {
    check_dims(width, height, channels);
    if (data.size() != static_cast<size_t>(width) * height * channels)
        throw invalid_input("radiance buffer size mismatch");
    for (float v : data) {
        if (!std::isfinite(v)) throw invalid_input("radiance value is not finite");
        if (v < 0.0f) throw invalid_input("radiance value is negative");
    }
}

LdrImage::LdrImage(int w, int h, int c, float fill) {
    check_dims(w, h, c);
    width = w;
    height = h;
    channels = c;
    data.assign(static_cast<size_t>(w) * h * c, fill);
}

void LdrImage::validate() const {
    check_dims(width, height, channels);
    if (data.size() != static_cast<size_t>(width) * height * channels)
        throw invalid_input("ldr buffer size mismatch");
    for (float v : data) {
        if (!std::isfinite(v)) throw invalid_input("ldr value is not finite");
        if (v < 0.0f || v > 1.0f) throw invalid_input("ldr value outside [0,1]");
    }
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

RadianceImage read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open '" + path + "'");

    std::string magic = next_token(in);
    int channels;
    if (magic == "PF") channels = 3;
    else if (magic == "Pf") channels = 1;
    else throw invalid_input("'" + path + "': not a PFM file");

    int w = parse_dim(next_token(in));
    int h = parse_dim(next_token(in));
    double scale;
    try {
        scale = std::stod(next_token(in));
    } catch (const std::exception&) {
        throw invalid_input("'" + path + "': bad scale");
    }
    if (scale == 0.0) throw invalid_input("'" + path + "': zero scale");
    in.get();  // single whitespace byte after the scale

    RadianceImage img(w, h, channels);
    const size_t row_floats = static_cast<size_t>(w) * channels;
    std::vector<float> row(row_floats);
    // PFM stores rows bottom-to-top.
    for (int y = h - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row_floats * 4));
        if (!in) throw invalid_input("'" + path + "': truncated pixel data");
        float* dst = &img.data[static_cast<size_t>(y) * row_floats];
        if (scale > 0.0) {
            for (size_t i = 0; i < row_floats; ++i) dst[i] = byteswap_float(row[i]);
        } else {
            std::copy(row.begin(), row.end(), dst);
        }
    }
    for (float v : img.data) {
        if (!std::isfinite(v)) throw invalid_input("'" + path + "': non-finite value");
        if (v < 0.0f) throw invalid_input("'" + path + "': negative value");
    }
    return img;
}

void write_pfm(const RadianceImage& img, const std::string& path) {
    img.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << (img.channels == 3 ? "PF" : "Pf") << "\n"
        << img.width << " " << img.height << "\n"
        << "-1.0" << "\n";
    const size_t row_floats = static_cast<size_t>(img.width) * img.channels;
    for (int y = img.height - 1; y >= 0; --y) {
        out.write(reinterpret_cast<const char*>(&img.data[static_cast<size_t>(y) * row_floats]),
                  static_cast<std::streamsize>(row_floats * 4));
    }
    if (!out) throw invalid_input("write failed for '" + path + "'");
}

LdrImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    if (next_token(in) != "P6") throw invalid_input("'" + path + "': not a binary PPM");
    int w = parse_dim(next_token(in));
    int h = parse_dim(next_token(in));
    int maxval = parse_dim(next_token(in));
    if (maxval != 255) throw invalid_input("'" + path + "': maxval must be 255");
    in.get();

    LdrImage img(w, h, 3);
    std::vector<std::uint8_t> raw(img.value_count());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) throw invalid_input("'" + path + "': truncated pixel data");
    for (size_t i = 0; i < raw.size(); ++i) img.data[i] = dequantize8(raw[i]);
    return img;
}

void write_ppm(const LdrImage& img, const std::string& path) {
    img.validate();
    if (img.channels != 3) throw invalid_input("PPM requires 3 channels");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::vector<std::uint8_t> raw(img.value_count());
    for (size_t i = 0; i < raw.size(); ++i) raw[i] = quantize8(img.data[i]);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw invalid_input("write failed for '" + path + "'");
}

std::uint8_t quantize8(float v) {
    if (!(v >= 0.0f && v <= 1.0f)) throw invalid_input("quantize8 input outside [0,1]");
    // round-half-up: 0.5/255 boundary maps to 1
    return static_cast<std::uint8_t>(std::floor(255.0 * static_cast<double>(v) + 0.5));
}

float dequantize8(std::uint8_t q) { return static_cast<float>(q) / 255.0f; }

LdrImage quantize_ldr(const LdrImage& img) {
    LdrImage out = img;
    for (float& v : out.data) v = dequantize8(quantize8(v));
    return out;
}

namespace {

Histogram make_histogram(const std::vector<float>& values, HistScale scale, int bins,
                         bool fixed, double lo, double hi) {
    if (bins <= 0) throw invalid_input("histogram needs at least one bin");
    if (values.empty()) throw invalid_input("histogram of empty value set");

    // Transform into the binned domain.
    std::vector<double> xs(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (!std::isfinite(v)) throw invalid_input("histogram value is not finite");
        if (scale == HistScale::Log2) {
            if (v < 0.0) throw invalid_input("log2 histogram needs non-negative values");
            xs[i] = std::log2(std::max(v, kLogFloor));
        } else {
            xs[i] = v;
        }
    }

    if (!fixed) {
        auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
        lo = *mn;
        hi = *mx;
        if (lo == hi) hi = lo + 1.0;  // degenerate range: single occupied bin
    } else if (scale == HistScale::Log2) {
        if (lo <= 0.0 || hi <= 0.0) throw invalid_input("log2 histogram range must be positive");
        lo = std::log2(lo);
        hi = std::log2(hi);
    }
    if (!(lo < hi)) throw invalid_input("histogram range must be increasing");

    Histogram h;
    h.scale = scale;
    h.edges.resize(static_cast<size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
    h.counts.assign(static_cast<size_t>(bins), 0);

    const double width = (hi - lo) / bins;
    for (double x : xs) {
        int b = static_cast<int>(std::floor((x - lo) / width));
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[static_cast<size_t>(b)];
    }
    return h;
}

}  // namespace

Histogram histogram(const std::vector<float>& values, HistScale scale, int bins) {
    return make_histogram(values, scale, bins, false, 0.0, 0.0);
}

Histogram histogram(const RadianceImage& img, HistScale scale, int bins) {
    return make_histogram(img.data, scale, bins, false, 0.0, 0.0);
}

Histogram histogram(const LdrImage& img, HistScale scale, int bins) {
    return make_histogram(img.data, scale, bins, false, 0.0, 0.0);
}

Histogram histogram_range(const std::vector<float>& values, HistScale scale, int bins,
                          double lo, double hi) {
    return make_histogram(values, scale, bins, true, lo, hi);
}

void write_histogram_csv(const Histogram& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << "edge_lo,edge_hi,count\n";
    for (size_t i = 0; i < h.counts.size(); ++i)
        out << h.edges[i] << "," << h.edges[i + 1] << "," << h.counts[i] << "\n";
    if (!out) throw invalid_input("write failed for '" + path + "'");
}

}  // namespace glow
