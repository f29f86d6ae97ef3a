#include "glow/invert.hpp"

#include <algorithm>
#include <cmath>

#include "glow/autodiff.hpp"
#include "glow/errors.hpp"
#include "glow/metrics.hpp"
#include "glow/rng.hpp"

namespace glow {

void InversionConfig::validate() const {
    if (stage1_iters < 0 || stage2_iters < 0)
        throw invalid_input("inversion config: iteration counts must be >= 0");
    if (restarts < 1) throw invalid_input("inversion config: restarts must be >= 1");
    if (lr_w <= 0.0 || lr_e <= 0.0 || lr_theta <= 0.0)
        throw invalid_input("inversion config: learning rates must be positive");
    if (!(tau > 0.0 && tau < 1.0)) throw invalid_input("inversion config: tau must lie in (0,1)");
    if (crf.beta <= kCrfParamFloor || crf.gamma <= kCrfParamFloor)
        throw invalid_input("inversion config: response parameters below the floor");
}

namespace {

ad::Tensor build_mse(ad::Tape& tape, ad::Tensor pred, ad::Tensor target) {
    ad::Tensor diff = tape.sub(pred, target);
    return tape.mean(tape.mul(diff, diff));
}

ad::Tensor build_loss(ad::Tape& tape, ad::Tensor pred, ad::Tensor target, InvLoss kind, int h,
                      int w, int c) {
    ad::Tensor pixel = build_mse(tape, pred, target);
    if (kind == InvLoss::PixelL2) return pixel;
    ad::Tensor p1 = tape.avgpool2x2(pred, h, w, c);
    ad::Tensor t1 = tape.avgpool2x2(target, h, w, c);
    ad::Tensor p2 = tape.avgpool2x2(p1, h / 2, w / 2, c);
    ad::Tensor t2 = tape.avgpool2x2(t1, h / 2, w / 2, c);
    ad::Tensor multi =
        tape.add(pixel, tape.add(build_mse(tape, p1, t1), build_mse(tape, p2, t2)));
    if (kind == InvLoss::MultiScaleL2) return multi;
    return tape.add(pixel, multi);
}

}  // namespace

InversionResult invert_with_init(const LdrImage& l_hat, const nn::GeneratorParams& params,
                                 const InversionConfig& cfg,
                                 const std::vector<std::vector<double>>& w_init, double e_init) {
    cfg.validate();
    l_hat.validate();
    if (l_hat.width != params.out_w || l_hat.height != params.out_h ||
        l_hat.channels != params.out_c)
        throw invalid_input("inversion target shape does not match the generator raster");
    if (static_cast<int>(w_init.size()) != params.L)
        throw invalid_input("w_plus init needs one vector per synthesis layer");
    for (const std::vector<double>& w : w_init)
        if (static_cast<int>(w.size()) != params.k)
            throw invalid_input("w_plus init vectors must have k entries");
    if (!std::isfinite(e_init)) throw invalid_input("exposure init must be finite");

    const int raster = params.raster_size();
    const std::vector<double> target(l_hat.data.begin(), l_hat.data.end());

    std::vector<nn::ParamBlock> wp;
    wp.reserve(static_cast<size_t>(params.L));
    for (int i = 0; i < params.L; ++i) {
        wp.emplace_back(1, params.k);
        wp.back().values = w_init[static_cast<size_t>(i)];
    }
    nn::ParamBlock e(1, 1);
    e.values[0] = e_init;

    InversionResult res;

    // --- stage 1: (w_plus, e) against frozen synthesis weights
    {
        nn::AdamState adam_w(cfg.lr_w), adam_e(cfg.lr_e);
        auto step = [&](bool update) {
            ad::Tape tape;
            std::vector<ad::Tensor> styles;
            styles.reserve(wp.size());
            for (const nn::ParamBlock& b : wp) styles.push_back(tape.leaf(b.values, 1, params.k));
            ad::Tensor et = tape.leaf(e.values, 1, 1);
            nn::SynthesisGraph syn = nn::build_synthesis(tape, params, styles);
            ad::Tensor pred = nn::build_camera_e(tape, syn.radiance, et, cfg.crf);
            ad::Tensor tt = tape.leaf(target, 1, raster);
            ad::Tensor loss = build_loss(tape, pred, tt, cfg.stage1_loss, params.out_h,
                                         params.out_w, params.out_c);
            const double value = tape.value_scalar(loss);
            if (update) {
                tape.backward(loss);
                std::vector<nn::ParamBlock*> blocks;
                std::vector<const std::vector<double>*> grads;
                for (size_t i = 0; i < wp.size(); ++i) {
                    blocks.push_back(&wp[i]);
                    grads.push_back(&tape.grad(styles[i]));
                }
                nn::adam_step(adam_w, blocks, grads);
                if (cfg.optimize_e) nn::adam_step(adam_e, {&e}, {&tape.grad(et)});
            }
            return value;
        };
        res.stage1_losses.reserve(static_cast<size_t>(cfg.stage1_iters) + 1);
        for (int it = 0; it < cfg.stage1_iters; ++it) res.stage1_losses.push_back(step(true));
        res.stage1_losses.push_back(step(false));
    }

    // --- stage 2: synthesis weights around the frozen (w_plus, e) pivot
    nn::GeneratorParams theta = params;
    {
        nn::AdamState adam_t(cfg.lr_theta);
        auto step = [&](bool update) {
            ad::Tape tape;
            std::vector<ad::Tensor> styles;
            styles.reserve(wp.size());
            for (const nn::ParamBlock& b : wp) styles.push_back(tape.leaf(b.values, 1, theta.k));
            ad::Tensor et = tape.leaf(e.values, 1, 1);
            nn::SynthesisGraph syn = nn::build_synthesis(tape, theta, styles);
            ad::Tensor pred = nn::build_camera_e(tape, syn.radiance, et, cfg.crf);
            ad::Tensor tt = tape.leaf(target, 1, raster);
            ad::Tensor loss = build_loss(tape, pred, tt, cfg.stage2_loss, theta.out_h,
                                         theta.out_w, theta.out_c);
            const double value = tape.value_scalar(loss);
            if (update) {
                tape.backward(loss);
                std::vector<const std::vector<double>*> grads;
                grads.reserve(syn.leaves.size());
                for (ad::Tensor t : syn.leaves) grads.push_back(&tape.grad(t));
                nn::adam_step(adam_t, theta.synthesis_blocks(), grads);
            }
            return value;
        };
        res.stage2_losses.reserve(static_cast<size_t>(cfg.stage2_iters) + 1);
        for (int it = 0; it < cfg.stage2_iters; ++it) res.stage2_losses.push_back(step(true));
        res.stage2_losses.push_back(step(false));
    }

    res.e_star = e.values[0];
    res.w_plus_star.resize(static_cast<size_t>(params.L));
    for (int i = 0; i < params.L; ++i) res.w_plus_star[static_cast<size_t>(i)] = wp[static_cast<size_t>(i)].values;
    res.theta_star = theta;
    res.r_star = nn::generate_wplus(theta, res.w_plus_star);
    res.mask = saturation_mask(l_hat, cfg.tau);
    res.r_blend = blend_hdr(l_hat, res.r_star, res.e_star, cfg.crf, cfg.tau);
    res.reproj_psnr = psnr(camera_project(res.r_star, res.e_star, cfg.crf), l_hat);
    return res;
}

InversionResult invert(const LdrImage& l_hat, const nn::GeneratorParams& params,
                       const InversionConfig& cfg) {
    cfg.validate();
    Rng rng(Rng::derive(cfg.seed, 0));
    std::vector<double> z(static_cast<size_t>(params.k));
    for (double& v : z) v = rng.normal();
    const std::vector<double> w = nn::map_latent(params, z);
    return invert_with_init(l_hat, params, cfg,
                            std::vector<std::vector<double>>(static_cast<size_t>(params.L), w),
                            0.0);
}

std::vector<InversionResult> invert_multimodal(const LdrImage& l_hat,
                                               const nn::GeneratorParams& params,
                                               const InversionConfig& cfg) {
    cfg.validate();
    std::vector<InversionResult> results;
    results.reserve(static_cast<size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> z(static_cast<size_t>(params.k));
        for (double& v : z) v = rng.normal();
        const std::vector<double> w = nn::map_latent(params, z);
        results.push_back(invert_with_init(
            l_hat, params, cfg,
            std::vector<std::vector<double>>(static_cast<size_t>(params.L), w), 0.0));
    }
    std::stable_sort(results.begin(), results.end(),
                     [](const InversionResult& a, const InversionResult& b) {
                         return a.reproj_psnr > b.reproj_psnr;
                     });
    return results;
}

}  // namespace glow
