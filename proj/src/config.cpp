#include "glow/config.hpp"

#include <fstream>
#include <sstream>

#include "glow/errors.hpp"
#include "json.hpp"

namespace glow {

namespace {

using nlohmann::json;

void get_to(const json& j, const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
}
void get_to(const json& j, const char* key, int& out) {
    if (j.contains(key)) out = j.at(key).get<int>();
}
void get_to(const json& j, const char* key, bool& out) {
    if (j.contains(key)) out = j.at(key).get<bool>();
}
void get_to(const json& j, const char* key, std::uint64_t& out) {
    if (j.contains(key)) out = j.at(key).get<std::uint64_t>();
}

InvLoss parse_loss(const std::string& s) {
    if (s == "pixel_l2") return InvLoss::PixelL2;
    if (s == "multiscale_l2") return InvLoss::MultiScaleL2;
    if (s == "pixel_plus_multiscale") return InvLoss::PixelPlusMultiScale;
    throw invalid_input("config: unknown loss '" + s + "'");
}

}  // namespace

Config parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw invalid_input(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw invalid_input("config: top level must be an object");

    Config cfg;
    try {
        if (j.contains("scene")) {
            const json& s = j.at("scene");
            get_to(s, "width", cfg.scene.width);
            get_to(s, "height", cfg.scene.height);
            get_to(s, "channels", cfg.scene.channels);
            get_to(s, "bg_lo", cfg.scene.bg_lo);
            get_to(s, "bg_hi", cfg.scene.bg_hi);
            get_to(s, "emitters_lo", cfg.scene.emitters_lo);
            get_to(s, "emitters_hi", cfg.scene.emitters_hi);
            get_to(s, "peak_lo", cfg.scene.peak_lo);
            get_to(s, "peak_hi", cfg.scene.peak_hi);
            get_to(s, "radius_lo", cfg.scene.radius_lo);
            get_to(s, "radius_hi", cfg.scene.radius_hi);
            get_to(s, "seed", cfg.scene.seed);
        }
        if (j.contains("priors")) {
            const json& p = j.at("priors");
            get_to(p, "sigma_e_sq", cfg.priors.sigma_e_sq);
            get_to(p, "beta_mean", cfg.priors.beta_mean);
            get_to(p, "beta_sd", cfg.priors.beta_sd);
            get_to(p, "gamma_mean", cfg.priors.gamma_mean);
            get_to(p, "gamma_sd", cfg.priors.gamma_sd);
            if (p.contains("crf_mode")) {
                const std::string mode = p.at("crf_mode").get<std::string>();
                if (mode == "stochastic") cfg.priors.crf_mode = CrfMode::Stochastic;
                else if (mode == "fixed") cfg.priors.crf_mode = CrfMode::Fixed;
                else throw invalid_input("config: unknown crf_mode '" + mode + "'");
            }
        }
        if (j.contains("dataset")) get_to(j.at("dataset"), "n", cfg.dataset_n);
        if (j.contains("train")) {
            const json& t = j.at("train");
            if (t.contains("mode")) {
                const std::string mode = t.at("mode").get<std::string>();
                if (mode == "glowgan") cfg.train.mode = TrainMode::GlowGan;
                else if (mode == "vanilla") cfg.train.mode = TrainMode::Vanilla;
                else throw invalid_input("config: unknown train mode '" + mode + "'");
            }
            get_to(t, "batch", cfg.train.batch);
            get_to(t, "steps", cfg.train.steps);
            get_to(t, "lr_g", cfg.train.lr_g);
            get_to(t, "lr_d", cfg.train.lr_d);
            get_to(t, "seed", cfg.train.seed);
            get_to(t, "metric_cadence", cfg.train.metric_cadence);
            get_to(t, "k", cfg.train.k);
            get_to(t, "L", cfg.train.L);
            get_to(t, "width", cfg.train.width);
            get_to(t, "d_width", cfg.train.d_width);
        }
        if (j.contains("invert")) {
            const json& v = j.at("invert");
            get_to(v, "stage1_iters", cfg.invert.stage1_iters);
            get_to(v, "lr_w", cfg.invert.lr_w);
            get_to(v, "lr_e", cfg.invert.lr_e);
            get_to(v, "stage2_iters", cfg.invert.stage2_iters);
            get_to(v, "lr_theta", cfg.invert.lr_theta);
            if (v.contains("stage1_loss"))
                cfg.invert.stage1_loss = parse_loss(v.at("stage1_loss").get<std::string>());
            if (v.contains("stage2_loss"))
                cfg.invert.stage2_loss = parse_loss(v.at("stage2_loss").get<std::string>());
            get_to(v, "optimize_e", cfg.invert.optimize_e);
            get_to(v, "restarts", cfg.invert.restarts);
            get_to(v, "tau", cfg.invert.tau);
            get_to(v, "seed", cfg.invert.seed);
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("config: ") + e.what());
    }

    cfg.train.priors = cfg.priors;
    cfg.invert.crf = CrfParams{cfg.priors.beta_mean, cfg.priors.gamma_mean};
    cfg.scene.validate();
    cfg.train.validate();
    cfg.invert.validate();
    if (cfg.dataset_n < 1) throw invalid_input("config: dataset n must be >= 1");
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot read config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace glow
