#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "glow/camera.hpp"
#include "glow/image.hpp"
#include "glow/nn.hpp"
#include "glow/rng.hpp"
#include "glow/scenes.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace glow;

namespace {

int run(const std::string& args, const std::string& stdout_to = "") {
    std::string cmd = std::string(GLOW_BIN) + " " + args;
    cmd += stdout_to.empty() ? " > /dev/null" : " > " + stdout_to;
    cmd += " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

fs::path work_dir() {
    static fs::path root = [] {
        fs::path p = fs::temp_directory_path() / "glow_cli_smoke";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

std::string q(const fs::path& p) { return p.string(); }

void write_tiny_config(const fs::path& path) {
    std::ofstream out(path);
    out << R"({
        "scene": {"width": 4, "height": 4, "seed": 5},
        "dataset": {"n": 10},
        "train": {"batch": 4, "steps": 4, "metric_cadence": 2,
                  "k": 4, "L": 2, "width": 8, "d_width": 8, "seed": 3},
        "invert": {"stage1_iters": 8, "stage2_iters": 4, "restarts": 2, "seed": 9}
    })";
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

int count_lines(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    int lines = 0;
    std::string s;
    while (std::getline(in, s))
        if (!s.empty()) ++lines;
    return lines;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
    CHECK(run("") == 1);
    CHECK(run("no-such-command") == 1);
    CHECK(run("sample --out x") == 1);           // missing required --ckpt
    CHECK(run("metrics") == 1);                  // needs --run or --images
    CHECK(run("metrics --run a --images b") == 1);
    CHECK(run("--help") == 0);
}

TEST_CASE("dataset synthesis is reproducible byte for byte") {
    const fs::path w = work_dir() / "synth";
    fs::create_directories(w);
    const fs::path cfgp = w / "c.json";
    write_tiny_config(cfgp);

    REQUIRE(run("synth-dataset --config " + q(cfgp) + " --out " + q(w / "d1")) == 0);
    REQUIRE(run("synth-dataset --config " + q(cfgp) + " --out " + q(w / "d2")) == 0);

    CHECK(fs::exists(w / "d1" / "manifest.csv"));
    CHECK(count_lines(w / "d1" / "manifest.csv") == 11);  // header + 10 rows
    for (const char* f : {"00000.ppm", "gt_00000.pfm", "00009.ppm", "gt_00009.pfm"})
        CHECK(fs::exists(w / "d1" / f));
    CHECK(slurp(w / "d1" / "manifest.csv") == slurp(w / "d2" / "manifest.csv"));
    CHECK(slurp(w / "d1" / "00003.ppm") == slurp(w / "d2" / "00003.ppm"));
    CHECK(slurp(w / "d1" / "gt_00003.pfm") == slurp(w / "d2" / "gt_00003.pfm"));

    // flag overrides beat the config
    REQUIRE(run("synth-dataset --config " + q(cfgp) + " --n 2 --out " + q(w / "d3")) == 0);
    CHECK(count_lines(w / "d3" / "manifest.csv") == 3);
    CHECK_FALSE(fs::exists(w / "d3" / "00002.ppm"));
}

TEST_CASE("train, sample, metrics, sweep, interpolate, invert round trip") {
    const fs::path w = work_dir() / "pipe";
    fs::create_directories(w);
    const fs::path cfgp = w / "c.json";
    write_tiny_config(cfgp);
    REQUIRE(run("synth-dataset --config " + q(cfgp) + " --out " + q(w / "data")) == 0);

    // training twice with the same seeds gives byte-identical checkpoints
    REQUIRE(run("train --config " + q(cfgp) + " --data " + q(w / "data") + " --out " + q(w / "runA")) == 0);
    REQUIRE(run("train --config " + q(cfgp) + " --data " + q(w / "data") + " --out " + q(w / "runB")) == 0);
    for (const char* f : {"ckpt_000002.bin", "ckpt_000004.bin", "ckpt_final.bin", "trainlog.csv"})
        CHECK(fs::exists(w / "runA" / f));
    CHECK(slurp(w / "runA" / "ckpt_final.bin") == slurp(w / "runB" / "ckpt_final.bin"));
    CHECK(slurp(w / "runA" / "trainlog.csv") == slurp(w / "runB" / "trainlog.csv"));
    CHECK(count_lines(w / "runA" / "trainlog.csv") == 3);  // header + 2 cadence rows

    const std::string ckpt = q(w / "runA" / "ckpt_final.bin");

    REQUIRE(run("sample --ckpt " + ckpt + " --n 2 --seed 4 --out " + q(w / "samples")) == 0);
    for (const char* f : {"sample_000.pfm", "sample_001.pfm", "preview_000.ppm", "preview_001.ppm"})
        CHECK(fs::exists(w / "samples" / f));
    RadianceImage s0 = read_pfm(q(w / "samples" / "sample_000.pfm"));
    CHECK(s0.width == 4);
    CHECK(s0.channels == 3);

    REQUIRE(run("metrics --images " + q(w / "samples"), q(w / "m1.json")) == 0);
    {
        std::ifstream in(w / "m1.json");
        nlohmann::json j = nlohmann::json::parse(in);
        CHECK(j.at("n").get<int>() == 2);
        CHECK(j.contains("dr50"));
        CHECK(j.contains("frac_above_1"));
    }
    REQUIRE(run("metrics --run " + q(w / "runA"), q(w / "m2.json")) == 0);
    {
        std::ifstream in(w / "m2.json");
        nlohmann::json j = nlohmann::json::parse(in);
        CHECK(j.at("step").get<int>() == 4);
        CHECK(j.contains("hist_chi2"));
    }

    const std::string gt0 = q(w / "data" / "gt_00000.pfm");
    REQUIRE(run("ev-sweep --in " + gt0 + " --evs=-2..2 --out " + q(w / "sweep")) == 0);
    for (const char* f : {"ev-2.ppm", "ev-1.ppm", "ev0.ppm", "ev1.ppm", "ev2.ppm"})
        CHECK(fs::exists(w / "sweep" / f));
    // single stop at 0 is exactly the mean-response capture
    REQUIRE(run("ev-sweep --in " + gt0 + " --evs=0 --out " + q(w / "sweep0")) == 0);
    LdrImage swept = read_ppm(q(w / "sweep0" / "ev0.ppm"));
    LdrImage direct = quantize_ldr(camera_project(read_pfm(gt0), 0.0, CrfParams{}));
    CHECK(swept.data == direct.data);

    REQUIRE(run("interpolate --ckpt " + ckpt + " --seed1 1 --seed2 2 --steps 3 --out " + q(w / "interp")) == 0);
    for (const char* f : {"interp_000.pfm", "interp_002.pfm", "interp_000.ppm", "interp_002.ppm"})
        CHECK(fs::exists(w / "interp" / f));

    const std::string ldr0 = q(w / "data" / "00000.ppm");
    REQUIRE(run("invert --in " + ldr0 + " --ckpt " + ckpt + " --config " + q(cfgp) +
                " --out " + q(w / "invA")) == 0);
    for (const char* d : {"restart_0", "restart_1"})
        for (const char* f : {"r_star.pfm", "r_blend.pfm", "mask.pfm", "preview.ppm", "result.json"})
            CHECK(fs::exists(w / "invA" / d / f));
    {
        std::ifstream in(w / "invA" / "restart_0" / "result.json");
        nlohmann::json j = nlohmann::json::parse(in);
        CHECK(j.contains("e_star"));
        CHECK(j.contains("reproj_psnr"));
        CHECK(j.at("stage1_losses").size() == 9);   // 8 iterations + final
        CHECK(j.at("stage2_losses").size() == 5);
    }
    REQUIRE(run("invert --in " + ldr0 + " --ckpt " + ckpt + " --config " + q(cfgp) +
                " --out " + q(w / "invB")) == 0);
    CHECK(slurp(w / "invA" / "restart_0" / "r_blend.pfm") ==
          slurp(w / "invB" / "restart_0" / "r_blend.pfm"));
    CHECK(slurp(w / "invA" / "restart_1" / "r_star.pfm") ==
          slurp(w / "invB" / "restart_1" / "r_star.pfm"));
}

TEST_CASE("zero training steps still produces a valid run directory") {
    const fs::path w = work_dir() / "zero";
    fs::create_directories(w);
    const fs::path cfgp = w / "c.json";
    write_tiny_config(cfgp);
    REQUIRE(run("synth-dataset --config " + q(cfgp) + " --n 4 --out " + q(w / "data")) == 0);
    REQUIRE(run("train --config " + q(cfgp) + " --data " + q(w / "data") +
                " --steps 0 --out " + q(w / "run")) == 0);
    CHECK(fs::exists(w / "run" / "ckpt_000000.bin"));
    CHECK(fs::exists(w / "run" / "ckpt_final.bin"));
    CHECK(count_lines(w / "run" / "trainlog.csv") == 1);  // header only

    nn::GeneratorParams g;
    nn::DiscriminatorParams d;
    nn::load_checkpoint(g, d, q(w / "run" / "ckpt_000000.bin"));
    CHECK(g.k == 4);
    CHECK(g.out_h == 4);
}

TEST_CASE("merge assembles a bracketed stack from disk") {
    const fs::path w = work_dir() / "merge";
    fs::create_directories(w);

    SceneConfig sc;
    sc.width = 4;
    sc.height = 4;
    sc.seed = 12;
    Rng rng(sc.seed);
    RadianceImage scene = sample_scene(sc, rng);
    const CrfParams p;
    std::ofstream manifest(w / "stack.csv");
    manifest << "path,e\n";
    for (double e : {-4.0, -2.0, 0.0, 2.0}) {
        char name[32];
        std::snprintf(name, sizeof(name), "e%+g.ppm", e);
        write_ppm(quantize_ldr(camera_project(scene, e, p)), q(w / name));
        manifest << name << "," << e << "\n";
    }
    manifest.close();

    REQUIRE(run("merge --manifest " + q(w / "stack.csv") + " --out " + q(w / "merged.pfm")) == 0);
    RadianceImage merged = read_pfm(q(w / "merged.pfm"));
    CHECK(merged.width == 4);
    CHECK(merged.channels == 3);
    for (float v : merged.data) CHECK(v >= 0.0f);

    std::ofstream bad(w / "bad.csv");
    bad << "file,exposure\nx.ppm,0\n";
    bad.close();
    CHECK(run("merge --manifest " + q(w / "bad.csv") + " --out " + q(w / "m2.pfm")) == 2);
}

TEST_CASE("data errors exit 2 and numeric failures exit 3") {
    const fs::path w = work_dir() / "errors";
    fs::create_directories(w);

    CHECK(run("sample --ckpt " + q(w / "missing.bin") + " --out " + q(w / "s")) == 2);
    CHECK(run("ev-sweep --in " + q(w / "missing.pfm") + " --evs=0 --out " + q(w / "e")) == 2);
    std::ofstream(w / "garbage.json") << "{nope";
    CHECK(run("synth-dataset --config " + q(w / "garbage.json") + " --out " + q(w / "d")) == 2);
    std::ofstream(w / "trunc.bin") << "GLCK";
    CHECK(run("sample --ckpt " + q(w / "trunc.bin") + " --out " + q(w / "s2")) == 2);

    // non-finite bytes in a checkpoint are malformed data, not a numeric failure
    Rng rng(1);
    nn::GeneratorParams g = nn::init_generator(4, 2, 8, 4, 4, 3, nn::HeadMode::Log2Radiance, rng);
    nn::DiscriminatorParams d = nn::init_discriminator(g.raster_size(), 8, rng);
    g.h0.values[0] = std::numeric_limits<double>::quiet_NaN();
    nn::save_checkpoint(g, d, q(w / "nan.bin"));
    CHECK(run("sample --ckpt " + q(w / "nan.bin") + " --out " + q(w / "s3")) == 2);

    // a divergent run overflows the next forward pass: numeric failure
    std::ofstream(w / "diverge.json") << R"({
        "scene": {"width": 4, "height": 4},
        "train": {"batch": 2, "steps": 1, "lr_d": 1e200,
                  "k": 4, "L": 2, "width": 8, "d_width": 8}
    })";
    REQUIRE(run("synth-dataset --config " + q(w / "diverge.json") + " --n 4 --out " + q(w / "ddata")) == 0);
    CHECK(run("train --config " + q(w / "diverge.json") + " --data " + q(w / "ddata") +
              " --out " + q(w / "drun")) == 3);
}
