#pragma once

#include <cstdint>
#include <vector>

#include "glow/camera.hpp"
#include "glow/nn.hpp"

namespace glow {

/// Reconstruction discrepancies between the reprojected capture and the
/// target. MultiScaleL2 adds mean-square terms over a 2-level average-pool
/// pyramid to the pixel term; PixelPlusMultiScale weights the pixel term in
/// again on top (the stage-2 default).
enum class InvLoss { PixelL2, MultiScaleL2, PixelPlusMultiScale };

struct InversionConfig {
    int stage1_iters = 800;
    double lr_w = 0.05;
    double lr_e = 0.02;
    int stage2_iters = 2500;
    double lr_theta = 1e-3;
    InvLoss stage1_loss = InvLoss::MultiScaleL2;
    InvLoss stage2_loss = InvLoss::PixelPlusMultiScale;
    bool optimize_e = true;  // false pins e at its init (ablation)
    int restarts = 4;
    double tau = kSaturationTau;
    CrfParams crf;  // held fixed at the prior means; never optimized
    std::uint64_t seed = 1;

    void validate() const;
};

struct InversionResult {
    double e_star = 0.0;
    std::vector<std::vector<double>> w_plus_star;  // one k-vector per layer
    nn::GeneratorParams theta_star;                // synthesis fine-tuned copy
    RadianceImage r_star;
    RadianceImage r_blend;
    RadianceImage mask;                            // single channel, in [0,1]
    double reproj_psnr = 0.0;                      // C(r*, e*) vs the input
    std::vector<double> stage1_losses;             // iters+1 entries
    std::vector<double> stage2_losses;             // iters+1 entries
};

/// Two-stage inversion of a trained HDR generator against one LDR image:
/// stage 1 optimizes (w_plus, e) with the synthesis weights frozen, starting
/// from w = M(z), z ~ N(0,I), e = 0; stage 2 fine-tunes the synthesis weights
/// around that pivot with (w_plus, e) frozen. The returned r_blend keeps the
/// linearized input bit-exact wherever the saturation mask is zero.
InversionResult invert(const LdrImage& l_hat, const nn::GeneratorParams& params,
                       const InversionConfig& cfg);

/// Same optimization from a caller-chosen starting point.
InversionResult invert_with_init(const LdrImage& l_hat, const nn::GeneratorParams& params,
                                 const InversionConfig& cfg,
                                 const std::vector<std::vector<double>>& w_init, double e_init);

/// cfg.restarts independent inversions with fresh z draws (restart r seeds
/// its draw from derive(cfg.seed, r)), sorted by reprojection PSNR, best
/// first. restarts=1 reduces to invert().
std::vector<InversionResult> invert_multimodal(const LdrImage& l_hat,
                                               const nn::GeneratorParams& params,
                                               const InversionConfig& cfg);

}  // namespace glow
