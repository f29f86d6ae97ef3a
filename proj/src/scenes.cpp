#include "glow/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glow/errors.hpp"

namespace glow {

void SceneConfig::validate() const {
    if (width <= 0 || height <= 0 || (channels != 1 && channels != 3))
        throw invalid_input("scene raster out of range");
    if (!(bg_lo > 0.0 && bg_lo <= bg_hi && bg_hi < 1.0))
        throw invalid_input("background range must satisfy 0 < lo <= hi < 1");
    if (emitters_lo < 0 || emitters_hi < emitters_lo)
        throw invalid_input("emitter count range out of order");
    if (!(peak_lo > 1.0 && peak_lo <= peak_hi))
        throw invalid_input("emitter peaks must exceed 1");
    if (!(radius_lo > 0.0 && radius_lo <= radius_hi))
        throw invalid_input("emitter radius range out of order");
}

RadianceImage sample_scene(const SceneConfig& cfg, Rng& rng) {
    cfg.validate();
    const int w = cfg.width, h = cfg.height, ch = cfg.channels;
    RadianceImage img(w, h, ch);

    // smooth background: bilinear in log2 between four corner levels
    double corner[4];
    for (double& c : corner) c = std::log2(rng.log_uniform(cfg.bg_lo, cfg.bg_hi));
    for (int y = 0; y < h; ++y) {
        const double ty = h > 1 ? static_cast<double>(y) / (h - 1) : 0.0;
        for (int x = 0; x < w; ++x) {
            const double tx = w > 1 ? static_cast<double>(x) / (w - 1) : 0.0;
            const double lg = (corner[0] * (1.0 - tx) + corner[1] * tx) * (1.0 - ty) +
                              (corner[2] * (1.0 - tx) + corner[3] * tx) * ty;
            const float bg = static_cast<float>(std::exp2(lg));
            for (int c = 0; c < ch; ++c) img.at(x, y, c) = bg;
        }
    }

    const int count = rng.uniform_int(cfg.emitters_lo, cfg.emitters_hi);
    for (int k = 0; k < count; ++k) {
        const double peak = rng.log_uniform(cfg.peak_lo, cfg.peak_hi);
        const double sigma = rng.uniform(cfg.radius_lo, cfg.radius_hi);
        const double cx = rng.uniform(0.0, static_cast<double>(w - 1));
        const double cy = rng.uniform(0.0, static_cast<double>(h - 1));
        double tint[3] = {1.0, 1.0, 1.0};
        if (ch == 3) {
            double mx = 0.0;
            for (double& t : tint) {
                t = rng.uniform(0.7, 1.0);
                mx = std::max(mx, t);
            }
            for (double& t : tint) t /= mx;  // peak channel reaches the sampled peak
        }
        const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                const double a = peak * std::exp(-d2 * inv2s2);
                for (int c = 0; c < ch; ++c) {
                    const float v = static_cast<float>(a * tint[c]);
                    img.at(x, y, c) = std::max(img.at(x, y, c), v);
                }
            }
    }
    img.validate();
    return img;
}

Dataset sample_dataset(const SceneConfig& cfg, const CameraPriors& priors, int n) {
    cfg.validate();
    if (n < 1) throw invalid_input("dataset needs n >= 1");
    Dataset ds;
    ds.ldr.reserve(static_cast<size_t>(n));
    ds.gt.reserve(static_cast<size_t>(n));
    ds.e.reserve(static_cast<size_t>(n));
    ds.crf.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(i)));
        RadianceImage scene = sample_scene(cfg, rng);
        const double e = sample_exposure(priors, rng);
        const CrfParams p = sample_crf(priors, rng);
        ds.ldr.push_back(camera_project(scene, e, p));
        ds.gt.push_back(std::move(scene));
        ds.e.push_back(e);
        ds.crf.push_back(p);
    }
    return ds;
}

namespace {

std::string index_name(int i, const char* prefix, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%05d.%s", prefix, i, ext);
    return buf;
}

}  // namespace

void write_dataset(const Dataset& ds, const std::string& dir) {
    if (ds.size() == 0) throw invalid_input("refusing to write an empty dataset");
    if (ds.gt.size() != ds.size() || ds.e.size() != ds.size() || ds.crf.size() != ds.size())
        throw invalid_input("dataset fields disagree in length");
    std::filesystem::create_directories(dir);
    std::ofstream manifest(std::filesystem::path(dir) / "manifest.csv");
    if (!manifest) throw invalid_input("cannot write manifest in '" + dir + "'");
    manifest << "index,e,beta,gamma,gt_pfm_path\n";
    manifest.precision(17);
    for (size_t i = 0; i < ds.size(); ++i) {
        const std::string ppm = index_name(static_cast<int>(i), "", "ppm");
        const std::string pfm = index_name(static_cast<int>(i), "gt_", "pfm");
        write_ppm(ds.ldr[i], (std::filesystem::path(dir) / ppm).string());
        write_pfm(ds.gt[i], (std::filesystem::path(dir) / pfm).string());
        manifest << i << "," << ds.e[i] << "," << ds.crf[i].beta << "," << ds.crf[i].gamma
                 << "," << pfm << "\n";
    }
    if (!manifest) throw invalid_input("manifest write failed in '" + dir + "'");
}

Dataset load_dataset(const std::string& dir) {
    std::ifstream manifest(std::filesystem::path(dir) / "manifest.csv");
    if (!manifest) throw invalid_input("no manifest.csv in '" + dir + "'");
    std::string line;
    if (!std::getline(manifest, line) || line != "index,e,beta,gamma,gt_pfm_path")
        throw invalid_input("unexpected manifest header in '" + dir + "'");

    Dataset ds;
    size_t expect = 0;
    while (std::getline(manifest, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        const size_t idx = static_cast<size_t>(std::stoull(field));
        if (idx != expect) throw invalid_input("manifest indices must be dense and ordered");
        ++expect;
        double e, beta, gamma;
        std::getline(row, field, ',');
        e = std::stod(field);
        std::getline(row, field, ',');
        beta = std::stod(field);
        std::getline(row, field, ',');
        gamma = std::stod(field);
        std::string pfm;
        std::getline(row, pfm, ',');
        if (pfm.empty()) throw invalid_input("manifest row missing gt path");

        ds.ldr.push_back(read_ppm((std::filesystem::path(dir) / index_name(static_cast<int>(idx), "", "ppm")).string()));
        ds.gt.push_back(read_pfm((std::filesystem::path(dir) / pfm).string()));
        ds.e.push_back(e);
        ds.crf.push_back(CrfParams{beta, gamma});
    }
    if (ds.size() == 0) throw invalid_input("manifest lists no images");
    return ds;
}

}  // namespace glow
