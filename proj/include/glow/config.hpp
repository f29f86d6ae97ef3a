#pragma once

#include <string>

#include "glow/camera.hpp"
#include "glow/invert.hpp"
#include "glow/scenes.hpp"
#include "glow/train.hpp"

namespace glow {

/// One JSON document configures the whole pipeline. Every section and every
/// field is optional; omitted fields keep their defaults. The priors section
/// feeds dataset synthesis, training, and the fixed inversion response.
///
///   {
///     "scene":   {"width","height","channels","bg_lo","bg_hi","emitters_lo",
///                 "emitters_hi","peak_lo","peak_hi","radius_lo","radius_hi","seed"},
///     "priors":  {"sigma_e_sq","beta_mean","beta_sd","gamma_mean","gamma_sd",
///                 "crf_mode": "stochastic"|"fixed"},
///     "dataset": {"n"},
///     "train":   {"mode": "glowgan"|"vanilla","batch","steps","lr_g","lr_d",
///                 "seed","metric_cadence","k","L","width","d_width"},
///     "invert":  {"stage1_iters","lr_w","lr_e","stage2_iters","lr_theta",
///                 "stage1_loss","stage2_loss": "pixel_l2"|"multiscale_l2"|
///                 "pixel_plus_multiscale","optimize_e","restarts","tau","seed"}
///   }
struct Config {
    SceneConfig scene;
    CameraPriors priors;
    int dataset_n = 5000;
    TrainConfig train;
    InversionConfig invert;
};

Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);

}  // namespace glow
