#pragma once

#include <string>
#include <vector>

#include "glow/autodiff.hpp"
#include "glow/camera.hpp"
#include "glow/image.hpp"
#include "glow/rng.hpp"

namespace glow::nn {

struct ParamBlock {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    ParamBlock() = default;
    ParamBlock(int r, int c) : rows(r), cols(c), values(static_cast<size_t>(r) * c, 0.0) {}
    size_t size() const { return values.size(); }
};

/// Output head of the generator: log2-radiance clamped to [-12,12] then
/// exponentiated (strictly positive HDR), or a sigmoid squashing to [0,1]
/// (the clipped-range baseline).
enum class HeadMode : std::uint32_t { Log2Radiance = 0, SigmoidLdr = 1 };

inline constexpr double kLogHeadClamp = 12.0;

/// Mapping MLP z->w plus a style-modulated synthesis stack. Layer i computes
///   h = tanh( (h_prev W + b) * (1 + w As + as) + (w At + at) )
/// from a learned constant h0, followed by a linear head to the raster.
struct GeneratorParams {
    int k = 16;       // latent / style width
    int L = 3;        // synthesis layers
    int width = 64;   // synthesis layer width
    int out_h = 8;
    int out_w = 8;
    int out_c = 3;
    HeadMode head = HeadMode::Log2Radiance;

    ParamBlock map_w1, map_b1, map_w2, map_b2;
    ParamBlock h0;
    struct Layer {
        ParamBlock w, b;
        ParamBlock style_scale_w, style_scale_b;
        ParamBlock style_shift_w, style_shift_b;
    };
    std::vector<Layer> layers;
    ParamBlock head_w, head_b;

    int raster_size() const { return out_h * out_w * out_c; }
    /// Blocks in declaration (= serialization = gradient) order.
    std::vector<ParamBlock*> all_blocks();
    std::vector<const ParamBlock*> all_blocks() const;
    /// Synthesis-only subset (everything except the mapping MLP).
    std::vector<ParamBlock*> synthesis_blocks();
};

/// Plain MLP on the flattened LDR raster with softplus hidden activations
/// and a single linear logit.
struct DiscriminatorParams {
    int in_dim = 192;
    int width = 64;

    ParamBlock w1, b1, w2, b2, w3, b3;

    std::vector<ParamBlock*> all_blocks();
    std::vector<const ParamBlock*> all_blocks() const;
};

/// He-style init: weights uniform(+-sqrt(6/fan_in)), biases zero, the learned
/// constant h0 uniform(-1,1).
GeneratorParams init_generator(int k, int L, int width, int out_h, int out_w, int out_c,
                               HeadMode head, Rng& rng);
DiscriminatorParams init_discriminator(int in_dim, int width, Rng& rng);

// --- graph builders -------------------------------------------------------
//
// Each builder creates leaves for the parameter blocks it touches and returns
// them in the same order as the corresponding *_blocks() accessor, so Adam
// can pair gradients with storage.

struct MappingGraph {
    ad::Tensor w;                        // [m, k]
    std::vector<ad::Tensor> leaves;      // map_w1, map_b1, map_w2, map_b2
};
MappingGraph build_mapping(ad::Tape& tape, const GeneratorParams& g, ad::Tensor z);

struct SynthesisGraph {
    ad::Tensor radiance;                 // [m, raster]; HDR or [0,1] per head
    std::vector<ad::Tensor> leaves;      // synthesis_blocks() order
};
/// One style tensor per layer, each [m, k]. Passing the same tensor L times
/// reduces to the single-w generator.
SynthesisGraph build_synthesis(ad::Tape& tape, const GeneratorParams& g,
                               const std::vector<ad::Tensor>& w_per_layer);

struct GeneratorGraph {
    ad::Tensor radiance;
    ad::Tensor w;
    std::vector<ad::Tensor> leaves;      // all_blocks() order
};
GeneratorGraph build_generator(ad::Tape& tape, const GeneratorParams& g, ad::Tensor z);

struct DiscriminatorGraph {
    ad::Tensor logit;                    // [m, 1]
    std::vector<ad::Tensor> leaves;      // all_blocks() order
};
DiscriminatorGraph build_discriminator(ad::Tape& tape, const DiscriminatorParams& d,
                                       ad::Tensor input);

/// Capture with per-sample constant camera draws (training):
/// crf(min(2^(e_i/2) * r, 1)) row-wise.
ad::Tensor build_camera(ad::Tape& tape, ad::Tensor radiance, const std::vector<double>& e_per_row,
                        const std::vector<CrfParams>& crf_per_row);

/// Capture with a differentiable scalar exposure and fixed CRF (inversion).
ad::Tensor build_camera_e(ad::Tape& tape, ad::Tensor radiance, ad::Tensor e, const CrfParams& p);

// --- inference without a tape ---------------------------------------------

RadianceImage generate(const GeneratorParams& g, const std::vector<double>& z);
RadianceImage generate_wplus(const GeneratorParams& g,
                             const std::vector<std::vector<double>>& w_per_layer);
std::vector<double> map_latent(const GeneratorParams& g, const std::vector<double>& z);

// --- optimizer -------------------------------------------------------------

struct AdamState {
    double lr = 2e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    std::vector<std::vector<double>> m, v;  // one slot per parameter block

    explicit AdamState(double lr_ = 2e-4) : lr(lr_) {}
};

/// One bias-corrected update over paired block/gradient lists. Gradients are
/// expected in the same order as the blocks.
void adam_step(AdamState& state, const std::vector<ParamBlock*>& blocks,
               const std::vector<const std::vector<double>*>& grads);

// --- checkpoints ------------------------------------------------------------
//
// Single binary file: magic "GLCK", u32 version, u32 head mode, u32 dims
// (k, L, width, out_h, out_w, out_c, d_in, d_width), then every generator
// block followed by every discriminator block as little-endian float32 in
// declaration order.

void save_checkpoint(const GeneratorParams& g, const DiscriminatorParams& d,
                     const std::string& path);
void load_checkpoint(GeneratorParams& g, DiscriminatorParams& d, const std::string& path);

}  // namespace glow::nn
