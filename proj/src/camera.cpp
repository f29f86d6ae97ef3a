#include "glow/camera.hpp"

#include <algorithm>
#include <cmath>

#include "glow/errors.hpp"

namespace glow {

double exposure_factor(double e) { return std::exp2(0.5 * e); }

double crf_apply(double x, const CrfParams& p) {
    if (!(x >= 0.0 && x <= 1.0)) throw invalid_input("crf_apply input outside [0,1]");
    if (p.beta <= kCrfParamFloor || p.gamma <= kCrfParamFloor)
        throw invalid_input("crf parameters must exceed 0.05");
    const double xg = std::pow(x, p.gamma);
    return (1.0 + p.beta) * xg / (p.beta + xg);
}

double crf_invert(double y, const CrfParams& p) {
    if (!(y >= 0.0 && y <= 1.0)) throw invalid_input("crf_invert input outside [0,1]");
    if (p.beta <= kCrfParamFloor || p.gamma <= kCrfParamFloor)
        throw invalid_input("crf parameters must exceed 0.05");
    // y = (1+b) x^g / (b + x^g)  =>  x^g = y b / (1 + b - y)
    const double xg = y * p.beta / (1.0 + p.beta - y);
    return std::pow(xg, 1.0 / p.gamma);
}

double expose_and_clip(double r, double e) {
    return std::min(exposure_factor(e) * r, 1.0);
}

RadianceImage expose_and_clip(const RadianceImage& r, double e) {
    r.validate();
    RadianceImage out(r.width, r.height, r.channels);
    for (size_t i = 0; i < r.data.size(); ++i)
        out.data[i] = static_cast<float>(expose_and_clip(r.data[i], e));
    return out;
}

double camera_value(double r, double e, const CrfParams& p) {
    return crf_apply(expose_and_clip(r, e), p);
}

LdrImage camera_project(const RadianceImage& r, double e, const CrfParams& p) {
    r.validate();
    LdrImage out(r.width, r.height, r.channels);
    for (size_t i = 0; i < r.data.size(); ++i)
        out.data[i] = static_cast<float>(camera_value(r.data[i], e, p));
    return out;
}

double sample_exposure(const CameraPriors& priors, Rng& rng) {
    if (priors.sigma_e_sq < 0.0) throw invalid_input("exposure variance must be non-negative");
    return rng.normal(0.0, std::sqrt(priors.sigma_e_sq));
}

CrfParams sample_crf(const CameraPriors& priors, Rng& rng) {
    if (priors.beta_sd < 0.0 || priors.gamma_sd < 0.0)
        throw invalid_input("crf prior sds must be non-negative");
    if (priors.crf_mode == CrfMode::Fixed)
        return CrfParams{priors.beta_mean, priors.gamma_mean};
    CrfParams p;
    do p.beta = rng.normal(priors.beta_mean, priors.beta_sd); while (p.beta <= kCrfParamFloor);
    do p.gamma = rng.normal(priors.gamma_mean, priors.gamma_sd); while (p.gamma <= kCrfParamFloor);
    return p;
}

RadianceImage saturation_mask(const LdrImage& l, double tau) {
    l.validate();
    if (!(tau > 0.0 && tau < 1.0)) throw invalid_input("tau must lie in (0,1)");
    RadianceImage m(l.width, l.height, 1);
    for (int y = 0; y < l.height; ++y) {
        for (int x = 0; x < l.width; ++x) {
            float peak = 0.0f;
            for (int c = 0; c < l.channels; ++c) peak = std::max(peak, l.at(x, y, c));
            m.at(x, y, 0) = static_cast<float>(std::max(0.0, (peak - tau) / (1.0 - tau)));
        }
    }
    return m;
}

RadianceImage blend_hdr(const LdrImage& l_hat, const RadianceImage& r_star, double e_star,
                        const CrfParams& p, double tau) {
    r_star.validate();
    l_hat.validate();
    if (r_star.width != l_hat.width || r_star.height != l_hat.height ||
        r_star.channels != l_hat.channels)
        throw invalid_input("blend_hdr: reconstruction and input shapes differ");

    const RadianceImage mask = saturation_mask(l_hat, tau);
    const double scale = exposure_factor(e_star);
    RadianceImage out(l_hat.width, l_hat.height, l_hat.channels);
    for (int y = 0; y < l_hat.height; ++y) {
        for (int x = 0; x < l_hat.width; ++x) {
            const float m = mask.at(x, y, 0);
            for (int c = 0; c < l_hat.channels; ++c) {
                if (m == 0.0f) {
                    // bit-exact passthrough of the trusted region
                    out.at(x, y, c) = static_cast<float>(crf_invert(l_hat.at(x, y, c), p));
                } else {
                    const double recon = scale * r_star.at(x, y, c);
                    const double direct = crf_invert(l_hat.at(x, y, c), p);
                    out.at(x, y, c) = static_cast<float>(m * recon + (1.0 - m) * direct);
                }
            }
        }
    }
    return out;
}

RadianceImage merge_exposures(const std::vector<ExposedImage>& stack, const CrfParams& p) {
    if (stack.empty()) throw invalid_input("merge_exposures needs at least one exposure");
    const LdrImage& first = stack[0].image;
    for (const ExposedImage& s : stack) {
        s.image.validate();
        if (s.image.width != first.width || s.image.height != first.height ||
            s.image.channels != first.channels)
            throw invalid_input("merge_exposures: images must share a shape");
    }

    size_t lowest = 0;
    for (size_t k = 1; k < stack.size(); ++k)
        if (stack[k].e < stack[lowest].e) lowest = k;

    RadianceImage out(first.width, first.height, first.channels);
    for (size_t i = 0; i < out.data.size(); ++i) {
        double num = 0.0, den = 0.0;
        for (const ExposedImage& s : stack) {
            const double l = s.image.data[i];
            if (l >= kMergeSaturated) continue;  // clipped: only a lower bound
            const double w = std::max(1.0 - std::abs(2.0 * l - 1.0), kMergeWeightFloor);
            num += w * crf_invert(l, p) / exposure_factor(s.e);
            den += w;
        }
        if (den > 0.0) {
            out.data[i] = static_cast<float>(num / den);
        } else {
            // clipped everywhere: darkest exposure gives the tightest bound
            out.data[i] = static_cast<float>(crf_invert(stack[lowest].image.data[i], p) /
                                             exposure_factor(stack[lowest].e));
        }
    }
    return out;
}

double preview_value(double r) {
    if (r < 0.0) throw invalid_input("preview of negative radiance");
    return std::pow(r / (1.0 + r), 1.0 / 2.2);
}

LdrImage preview_tonemap(const RadianceImage& r) {
    r.validate();
    LdrImage out(r.width, r.height, r.channels);
    for (size_t i = 0; i < r.data.size(); ++i)
        out.data[i] = static_cast<float>(preview_value(r.data[i]));
    return out;
}

std::vector<LdrImage> ev_sweep(const RadianceImage& r, const std::vector<double>& evs,
                               const CrfParams& p) {
    std::vector<LdrImage> out;
    out.reserve(evs.size());
    for (double ev : evs) out.push_back(camera_project(r, 2.0 * ev, p));
    return out;
}

}  // namespace glow
