#pragma once

#include <functional>
#include <string>
#include <vector>

#include "glow/camera.hpp"
#include "glow/nn.hpp"
#include "glow/scenes.hpp"

namespace glow {

enum class TrainMode { GlowGan, Vanilla };

/// GlowGan mode trains an HDR generator seen by the discriminator only
/// through per-sample stochastic captures; Vanilla trains a [0,1] generator
/// directly against the LDR data (the capture step is the identity).
struct TrainConfig {
    CameraPriors priors;
    TrainMode mode = TrainMode::GlowGan;
    int batch = 64;
    int steps = 6000;
    double lr_g = 2e-4;
    double lr_d = 2e-4;
    std::uint64_t seed = 1;
    int metric_cadence = 500;  // rows per this many steps; 0 disables
    int k = 16;
    int L = 3;
    int width = 64;
    int d_width = 64;

    void validate() const;
};

struct TrainLogRow {
    long step = 0;
    double g_loss = 0.0;
    double d_loss = 0.0;
    double dr50 = 0.0;
    double dr90 = 0.0;
    double hist_chi2 = 0.0;
};

struct TrainLog {
    std::vector<TrainLogRow> rows;
};

/// CSV: step,g_loss,d_loss,dr50,dr90,hist_chi2
void write_trainlog_csv(const TrainLog& log, const std::string& path);

struct TrainResult {
    nn::GeneratorParams g;
    nn::DiscriminatorParams d;
    TrainLog log;
};

/// Alternating non-saturating updates:
///   D minimizes softplus(-D(real)) + softplus(D(fake))
///   G minimizes softplus(-D(C(G(z))))
/// with fresh (e, CRF) draws per fake image. Deterministic given
/// (dataset, cfg): single-threaded, fixed reduction order.
/// on_checkpoint (optional) fires at every metric-cadence boundary and at
/// the end, after the log row for that step.
TrainResult train(const Dataset& data, const TrainConfig& cfg,
                  const std::function<void(long step, const TrainResult&)>& on_checkpoint = {});

/// One independent (e, CRF) draw per batch image.
struct CameraDraws {
    std::vector<double> e;
    std::vector<CrfParams> crf;
};
CameraDraws sample_camera_batch(const CameraPriors& priors, int n, Rng& rng);

/// n fresh z draws through the generator; no capture applied.
std::vector<RadianceImage> sample_hdr(const nn::GeneratorParams& g, int n, Rng& rng);

/// Linear interpolation in w between M(z1) and M(z2), synthesized per step.
std::vector<RadianceImage> interpolate(const nn::GeneratorParams& g, const std::vector<double>& z1,
                                       const std::vector<double>& z2, int steps);

inline constexpr int kEvalHistBins = 64;
/// An LDR value counts as saturated from the top quantization bucket on.
inline constexpr double kEvalSaturated = 254.5 / 255.0;

struct EvalRow {
    double hist_chi2 = 0.0;  // generated-LDR vs training-LDR, 64 bins on [0,1]
    double sat_frac_gen = 0.0;
    double sat_frac_data = 0.0;
    double sat_gap = 0.0;
    double dr50 = 0.0;       // HDR floor 2^-16; [0,1]-head samples use the
    double dr90 = 0.0;       // 8-bit floor 1/255 instead
};

/// Projects n samples through freshly drawn cameras (identity for [0,1]
/// heads) and compares the value distribution against the training LDRs.
EvalRow eval_distribution(const nn::GeneratorParams& g, const Dataset& data,
                          const CameraPriors& priors, int n, Rng& rng);

}  // namespace glow
