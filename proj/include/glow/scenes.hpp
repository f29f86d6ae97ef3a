#pragma once

#include <string>
#include <vector>

#include "glow/camera.hpp"
#include "glow/image.hpp"
#include "glow/rng.hpp"

namespace glow {

/// Procedural HDR scene family: a smooth sub-1 background with a handful of
/// Gaussian emitters whose peaks exceed 1. The true radiance distribution is
/// known, so trained generators can be verified against it.
struct SceneConfig {
    int width = 8;
    int height = 8;
    int channels = 3;
    // Defaults are tuned so the family is unambiguously HDR: median per-image
    // dynamic range ~14 stops. Dark floor stays above 2^-12 (the generator
    // head's representable minimum) and radius_lo stays at 0.8 so an emitter
    // attenuates by at most 1/2 at the nearest pixel center; radius_hi is
    // kept small enough that emitter tails do not lift the background floor.
    double bg_lo = 2.5e-4;  // background radiance range, inside (0,1)
    double bg_hi = 0.25;
    int emitters_lo = 1;    // emitter count range, inclusive
    int emitters_hi = 2;
    double peak_lo = 4.0;   // emitter peak radiance, log-uniform, above 1
    double peak_hi = 128.0;
    double radius_lo = 0.8; // emitter Gaussian sigma in pixels
    double radius_hi = 1.2;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Background bilinear in log2 space between four sampled corner levels;
/// emitters composited by per-channel max so a peak-p emitter bounds the
/// image max by p from above (and from below by p/2 given radius >= 0.8,
/// the attenuation at the nearest pixel center).
RadianceImage sample_scene(const SceneConfig& cfg, Rng& rng);

struct Dataset {
    std::vector<LdrImage> ldr;
    std::vector<RadianceImage> gt;
    std::vector<double> e;
    std::vector<CrfParams> crf;

    size_t size() const { return ldr.size(); }
};

/// n scenes, each captured exactly once with fresh (e, CRF) draws. Scene i
/// runs on its own child stream derive(cfg.seed, i), so the result is
/// independent of evaluation order.
Dataset sample_dataset(const SceneConfig& cfg, const CameraPriors& priors, int n);

/// Writes NNNNN.ppm, gt_NNNNN.pfm and manifest.csv
/// (index,e,beta,gamma,gt_pfm_path) into dir.
void write_dataset(const Dataset& ds, const std::string& dir);

/// Reads a directory written by write_dataset. LDR values land on the 8-bit
/// lattice, gt images are bit-exact.
Dataset load_dataset(const std::string& dir);

}  // namespace glow
