#pragma once

#include <vector>

#include "glow/image.hpp"
#include "glow/rng.hpp"

namespace glow {

/// Sigmoid-like response curve y = (1+beta) x^gamma / (beta + x^gamma) on
/// [0,1]. Both parameters must stay > 0.05.
struct CrfParams {
    double beta = 0.6;
    double gamma = 0.9;
};

inline constexpr double kCrfParamFloor = 0.05;

enum class CrfMode { Stochastic, Fixed };

/// Distributions the virtual camera draws from. sigma_e_sq is a variance; the
/// CRF means/sds parameterize truncated Gaussians. In Fixed mode sample_crf
/// returns the means.
struct CameraPriors {
    double sigma_e_sq = 1.0;
    double beta_mean = 0.6;
    double beta_sd = 0.1;
    double gamma_mean = 0.9;
    double gamma_sd = 0.1;
    CrfMode crf_mode = CrfMode::Stochastic;
};

/// Saturation threshold for soft masks.
inline constexpr double kSaturationTau = 0.97;

/// Exposure scale: radiance is multiplied by 2^(e/2), so one photographic
/// stop corresponds to e = 2.
double exposure_factor(double e);

double crf_apply(double x, const CrfParams& p);
double crf_invert(double y, const CrfParams& p);

/// min(2^(e/2) * r, 1)
double expose_and_clip(double r, double e);
RadianceImage expose_and_clip(const RadianceImage& r, double e);

/// Full capture: l = crf(min(2^(e/2) * r, 1)) per value.
double camera_value(double r, double e, const CrfParams& p);
LdrImage camera_project(const RadianceImage& r, double e, const CrfParams& p);

/// e ~ N(0, sigma_e_sq).
double sample_exposure(const CameraPriors& priors, Rng& rng);

/// beta ~ N(beta_mean, beta_sd), gamma ~ N(gamma_mean, gamma_sd), each
/// redrawn until > 0.05. Fixed mode returns the means without drawing.
CrfParams sample_crf(const CameraPriors& priors, Rng& rng);

/// Per-pixel soft saturation mask in [0,1]:
/// m = max(0, max_over_channels(l) - tau) / (1 - tau). Single channel out.
RadianceImage saturation_mask(const LdrImage& l, double tau = kSaturationTau);

/// Composites a reconstruction with the trusted unsaturated content:
/// out = m * (2^(e_star/2) * r_star) + (1 - m) * crf_invert(l_hat),
/// with m = saturation_mask(l_hat, tau). Output lives in the exposure frame
/// of the input; where m == 0 it equals crf_invert(l_hat) bit-exactly.
RadianceImage blend_hdr(const LdrImage& l_hat, const RadianceImage& r_star, double e_star,
                        const CrfParams& p, double tau = kSaturationTau);

struct ExposedImage {
    LdrImage image;
    double e = 0.0;
};

/// Observations at or above this level are treated as clipped during merging
/// (they only bound radiance from below) and excluded from the average.
inline constexpr double kMergeSaturated = 0.9999;
inline constexpr double kMergeWeightFloor = 0.01;

/// Classic bracketed-exposure HDR assembly. Per value:
///   estimate_k = crf_invert(l_k) / 2^(e_k/2),  weight w = 1 - |2 l_k - 1|
/// (floored at 0.01), averaged over the exposures where l_k < 0.9999.
/// If every exposure is clipped the estimate from the lowest e is used.
RadianceImage merge_exposures(const std::vector<ExposedImage>& stack, const CrfParams& p);

/// Display mapping for inspection: x/(1+x) then gamma 1/2.2.
LdrImage preview_tonemap(const RadianceImage& r);
double preview_value(double r);

/// Re-exposures of an HDR image at e = 2*ev for each requested stop.
std::vector<LdrImage> ev_sweep(const RadianceImage& r, const std::vector<double>& evs,
                               const CrfParams& p);

}  // namespace glow
