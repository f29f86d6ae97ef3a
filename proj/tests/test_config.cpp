#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "glow/config.hpp"
#include "glow/errors.hpp"

using namespace glow;

TEST_CASE("empty config keeps every default") {
    Config cfg = parse_config("{}");
    CHECK(cfg.scene.width == 8);
    CHECK(cfg.scene.height == 8);
    CHECK(cfg.scene.channels == 3);
    CHECK(cfg.priors.sigma_e_sq == 1.0);
    CHECK(cfg.priors.crf_mode == CrfMode::Stochastic);
    CHECK(cfg.dataset_n == 5000);
    CHECK(cfg.train.mode == TrainMode::GlowGan);
    CHECK(cfg.train.batch == 64);
    CHECK(cfg.train.steps == 6000);
    CHECK(cfg.train.k == 16);
    CHECK(cfg.invert.stage1_iters == 800);
    CHECK(cfg.invert.stage2_iters == 2500);
    CHECK(cfg.invert.restarts == 4);
    CHECK(cfg.invert.crf.beta == 0.6);
    CHECK(cfg.invert.crf.gamma == 0.9);
}

TEST_CASE("sections override their fields and feed the dependents") {
    Config cfg = parse_config(R"({
        "scene": {"width": 4, "height": 4, "seed": 17},
        "priors": {"sigma_e_sq": 3.0, "beta_mean": 0.7, "crf_mode": "fixed"},
        "dataset": {"n": 24},
        "train": {"mode": "vanilla", "batch": 8, "steps": 100, "L": 2, "k": 4, "width": 8, "d_width": 8},
        "invert": {"stage1_iters": 10, "restarts": 2, "stage2_loss": "pixel_l2", "optimize_e": false}
    })");
    CHECK(cfg.scene.width == 4);
    CHECK(cfg.scene.seed == 17);
    CHECK(cfg.dataset_n == 24);
    CHECK(cfg.train.mode == TrainMode::Vanilla);
    CHECK(cfg.train.batch == 8);
    // the priors section feeds training and the fixed inversion response
    CHECK(cfg.train.priors.sigma_e_sq == 3.0);
    CHECK(cfg.train.priors.crf_mode == CrfMode::Fixed);
    CHECK(cfg.invert.crf.beta == 0.7);
    CHECK(cfg.invert.crf.gamma == 0.9);
    CHECK(cfg.invert.stage1_iters == 10);
    CHECK(cfg.invert.stage2_loss == InvLoss::PixelL2);
    CHECK_FALSE(cfg.invert.optimize_e);
    // unknown keys are ignored
    CHECK_NOTHROW(parse_config(R"({"scene": {"wigth": 4}})"));
}

TEST_CASE("malformed configs are rejected as invalid input") {
    CHECK_THROWS_AS(parse_config("not json"), invalid_input);
    CHECK_THROWS_AS(parse_config("[1,2]"), invalid_input);
    CHECK_THROWS_AS(parse_config(R"({"priors": {"crf_mode": "wild"}})"), invalid_input);
    CHECK_THROWS_AS(parse_config(R"({"train": {"mode": "wgan"}})"), invalid_input);
    CHECK_THROWS_AS(parse_config(R"({"invert": {"stage1_loss": "lpips"}})"), invalid_input);
    CHECK_THROWS_AS(parse_config(R"({"train": {"batch": 0}})"), invalid_input);
    CHECK_THROWS_AS(parse_config(R"({"train": {"batch": "four"}})"), invalid_input);
    CHECK_THROWS_AS(parse_config(R"({"dataset": {"n": 0}})"), invalid_input);
    CHECK_THROWS_AS(parse_config(R"({"scene": {"bg_lo": 0.9, "bg_hi": 0.1}})"), invalid_input);
}

TEST_CASE("config files load from disk") {
    const char* path = "config_test.json";
    {
        std::ofstream out(path);
        out << R"({"dataset": {"n": 3}})";
    }
    Config cfg = load_config(path);
    CHECK(cfg.dataset_n == 3);
    std::remove(path);
    CHECK_THROWS_AS(load_config("missing_config.json"), invalid_input);
}
