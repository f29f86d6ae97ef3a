#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glow/config.hpp"
#include "glow/errors.hpp"
#include "glow/image.hpp"
#include "glow/invert.hpp"
#include "glow/metrics.hpp"
#include "glow/nn.hpp"
#include "glow/rng.hpp"
#include "glow/scenes.hpp"
#include "glow/train.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace glow;

namespace {

Config config_or_default(const std::string& path) {
    return path.empty() ? Config{} : load_config(path);
}

std::string step_name(const char* stem, int index, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03d.%s", stem, index, ext);
    return buf;
}

/// "--evs" accepts "A..B" (integer stops, inclusive, either direction) or a
/// comma-separated list of values.
std::vector<double> parse_evs(const std::string& text) {
    std::vector<double> evs;
    const size_t dots = text.find("..");
    if (dots != std::string::npos) {
        int a = 0, b = 0;
        try {
            a = std::stoi(text.substr(0, dots));
            b = std::stoi(text.substr(dots + 2));
        } catch (const std::exception&) {
            throw invalid_input("evs: cannot parse range '" + text + "'");
        }
        const int step = a <= b ? 1 : -1;
        for (int v = a;; v += step) {
            evs.push_back(v);
            if (v == b) break;
        }
        return evs;
    }
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            evs.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw invalid_input("evs: cannot parse value '" + tok + "'");
        }
    }
    if (evs.empty()) throw invalid_input("evs: empty list");
    return evs;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw invalid_input("cannot create '" + dir + "': " + ec.message());
}

void ensure_parent(const std::string& file) {
    const fs::path parent = fs::path(file).parent_path();
    if (!parent.empty()) ensure_dir(parent.string());
}

nn::GeneratorParams load_generator(const std::string& ckpt) {
    nn::GeneratorParams g;
    nn::DiscriminatorParams d;
    nn::load_checkpoint(g, d, ckpt);
    return g;
}

std::vector<double> seeded_latent(int k, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> z(static_cast<size_t>(k));
    for (double& v : z) v = rng.normal();
    return z;
}

void run_synth_dataset(const std::string& config_path, const std::string& out, int n_override,
                       std::int64_t seed_override) {
    Config cfg = config_or_default(config_path);
    if (n_override > 0) cfg.dataset_n = n_override;
    if (seed_override >= 0) cfg.scene.seed = static_cast<std::uint64_t>(seed_override);
    ensure_dir(out);
    Dataset ds = sample_dataset(cfg.scene, cfg.priors, cfg.dataset_n);
    write_dataset(ds, out);
    std::printf("wrote %zu images to %s\n", ds.size(), out.c_str());
}

void run_train(const std::string& config_path, const std::string& data_dir,
               const std::string& out, int steps_override, std::int64_t seed_override,
               const std::string& mode_override) {
    Config cfg = config_or_default(config_path);
    if (steps_override >= 0) cfg.train.steps = steps_override;
    if (seed_override >= 0) cfg.train.seed = static_cast<std::uint64_t>(seed_override);
    if (!mode_override.empty()) {
        if (mode_override == "glowgan") cfg.train.mode = TrainMode::GlowGan;
        else if (mode_override == "vanilla") cfg.train.mode = TrainMode::Vanilla;
        else throw invalid_input("unknown mode '" + mode_override + "'");
    }

    Dataset data = load_dataset(data_dir);
    ensure_dir(out);
    TrainResult res = train(data, cfg.train, [&](long step, const TrainResult& r) {
        char name[64];
        std::snprintf(name, sizeof(name), "ckpt_%06ld.bin", step);
        nn::save_checkpoint(r.g, r.d, (fs::path(out) / name).string());
    });
    nn::save_checkpoint(res.g, res.d, (fs::path(out) / "ckpt_final.bin").string());
    write_trainlog_csv(res.log, (fs::path(out) / "trainlog.csv").string());
    std::printf("trained %d steps, run directory %s\n", cfg.train.steps, out.c_str());
}

void run_sample(const std::string& ckpt, int n, const std::string& out, std::uint64_t seed,
                bool hdr_only, bool preview_only) {
    if (n < 1) throw invalid_input("sample: n must be >= 1");
    nn::GeneratorParams g = load_generator(ckpt);
    ensure_dir(out);
    const bool write_hdr = hdr_only || !preview_only;
    const bool write_preview = preview_only || !hdr_only;
    Rng rng(seed);
    std::vector<RadianceImage> samples = sample_hdr(g, n, rng);
    for (int i = 0; i < n; ++i) {
        const RadianceImage& s = samples[static_cast<size_t>(i)];
        if (write_hdr) write_pfm(s, (fs::path(out) / step_name("sample", i, "pfm")).string());
        if (write_preview)
            write_ppm(preview_tonemap(s), (fs::path(out) / step_name("preview", i, "ppm")).string());
    }
    std::printf("wrote %d samples to %s\n", n, out.c_str());
}

void run_ev_sweep(const std::string& in, const std::string& evs_text, const std::string& out,
                  double beta, double gamma) {
    RadianceImage r = read_pfm(in);
    const std::vector<double> evs = parse_evs(evs_text);
    ensure_dir(out);
    std::vector<LdrImage> series = ev_sweep(r, evs, CrfParams{beta, gamma});
    for (size_t i = 0; i < series.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "ev%g.ppm", evs[i]);
        write_ppm(series[i], (fs::path(out) / name).string());
    }
    std::printf("wrote %zu exposures to %s\n", series.size(), out.c_str());
}

void run_invert(const std::string& in, const std::string& ckpt, const std::string& config_path,
                int restarts, std::int64_t seed_override, const std::string& out) {
    Config cfg = config_or_default(config_path);
    if (restarts > 0) cfg.invert.restarts = restarts;
    if (seed_override >= 0) cfg.invert.seed = static_cast<std::uint64_t>(seed_override);

    LdrImage target = read_ppm(in);
    nn::GeneratorParams g = load_generator(ckpt);
    std::vector<InversionResult> results = invert_multimodal(target, g, cfg.invert);

    ensure_dir(out);
    for (size_t i = 0; i < results.size(); ++i) {
        const InversionResult& res = results[i];
        const fs::path dir = fs::path(out) / ("restart_" + std::to_string(i));
        ensure_dir(dir.string());
        write_pfm(res.r_star, (dir / "r_star.pfm").string());
        write_pfm(res.r_blend, (dir / "r_blend.pfm").string());
        write_pfm(res.mask, (dir / "mask.pfm").string());
        write_ppm(preview_tonemap(res.r_blend), (dir / "preview.ppm").string());

        nlohmann::json j;
        j["e_star"] = res.e_star;
        j["reproj_psnr"] = res.reproj_psnr;
        j["stage1_losses"] = res.stage1_losses;
        j["stage2_losses"] = res.stage2_losses;
        std::ofstream jf(dir / "result.json");
        if (!jf) throw invalid_input("cannot write result.json");
        jf << j.dump(2) << "\n";
    }
    std::printf("wrote %zu restarts to %s\n", results.size(), out.c_str());
}

void run_merge(const std::string& manifest, double beta, double gamma, const std::string& out) {
    std::ifstream in(manifest);
    if (!in) throw invalid_input("cannot read manifest '" + manifest + "'");
    const fs::path base = fs::path(manifest).parent_path();

    std::string line;
    if (!std::getline(in, line) || line != "path,e")
        throw invalid_input("stack manifest must start with 'path,e'");
    std::vector<ExposedImage> stack;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t comma = line.rfind(',');
        if (comma == std::string::npos) throw invalid_input("bad manifest row '" + line + "'");
        ExposedImage obs;
        try {
            obs.e = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw invalid_input("bad exposure in row '" + line + "'");
        }
        obs.image = read_ppm((base / line.substr(0, comma)).string());
        stack.push_back(std::move(obs));
    }

    RadianceImage merged = merge_exposures(stack, CrfParams{beta, gamma});
    ensure_parent(out);
    write_pfm(merged, out);
    std::printf("merged %zu exposures into %s\n", stack.size(), out.c_str());
}

void run_metrics(const std::string& run_dir, const std::string& images_dir,
                 const std::string& hist_out) {
    nlohmann::json j;
    if (!run_dir.empty()) {
        std::ifstream in(fs::path(run_dir) / "trainlog.csv");
        if (!in) throw invalid_input("cannot read trainlog.csv in '" + run_dir + "'");
        std::string line, last;
        std::getline(in, line);  // header
        while (std::getline(in, line))
            if (!line.empty()) last = line;
        if (last.empty()) throw invalid_input("trainlog.csv has no rows");
        TrainLogRow row;
        if (std::sscanf(last.c_str(), "%ld,%lf,%lf,%lf,%lf,%lf", &row.step, &row.g_loss,
                        &row.d_loss, &row.dr50, &row.dr90, &row.hist_chi2) != 6)
            throw invalid_input("bad trainlog row '" + last + "'");
        j["step"] = row.step;
        j["g_loss"] = row.g_loss;
        j["d_loss"] = row.d_loss;
        j["dr50"] = row.dr50;
        j["dr90"] = row.dr90;
        j["hist_chi2"] = row.hist_chi2;
    } else {
        std::vector<fs::path> files;
        for (const fs::directory_entry& entry : fs::directory_iterator(images_dir))
            if (entry.path().extension() == ".pfm") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw invalid_input("no .pfm files in '" + images_dir + "'");

        std::vector<double> per_image;
        std::vector<float> all_values;
        size_t above_one = 0;
        for (const fs::path& f : files) {
            RadianceImage img = read_pfm(f.string());
            per_image.push_back(dynamic_range(img));
            for (float v : img.data) above_one += (v > 1.0f);
            all_values.insert(all_values.end(), img.data.begin(), img.data.end());
        }
        DrStats stats = dr_percentiles(per_image);
        j["n"] = files.size();
        j["dr50"] = stats.dr50;
        j["dr90"] = stats.dr90;
        j["frac_above_1"] = static_cast<double>(above_one) / static_cast<double>(all_values.size());
        if (!hist_out.empty()) {
            ensure_parent(hist_out);
            write_histogram_csv(histogram(all_values, HistScale::Log2, 64), hist_out);
        }
    }
    std::printf("%s\n", j.dump(2).c_str());
}

void run_interpolate(const std::string& ckpt, std::uint64_t seed1, std::uint64_t seed2, int steps,
                     const std::string& out) {
    nn::GeneratorParams g = load_generator(ckpt);
    std::vector<RadianceImage> path =
        interpolate(g, seeded_latent(g.k, seed1), seeded_latent(g.k, seed2), steps);
    ensure_dir(out);
    for (size_t i = 0; i < path.size(); ++i) {
        write_pfm(path[i], (fs::path(out) / step_name("interp", static_cast<int>(i), "pfm")).string());
        write_ppm(preview_tonemap(path[i]),
                  (fs::path(out) / step_name("interp", static_cast<int>(i), "ppm")).string());
    }
    std::printf("wrote %zu interpolation frames to %s\n", path.size(), out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale HDR GAN: stochastic captures, adversarial training, inversion"};
    app.require_subcommand(1);

    std::string config_path, out, data_dir, ckpt, in_path, evs_text, manifest, mode_override;
    std::string run_dir, images_dir, hist_out;
    int synth_n = 0, sample_n = 1, steps_override = -1, restarts = 0, interp_steps = 8;
    std::int64_t seed_override = -1;
    std::uint64_t seed = 1, seed1 = 1, seed2 = 2;
    double beta = 0.6, gamma = 0.9;
    bool hdr_only = false, preview_only = false;

    CLI::App* synth = app.add_subcommand("synth-dataset", "synthesize an LDR dataset with HDR ground truth");
    synth->add_option("--config", config_path, "JSON config");
    synth->add_option("--out", out, "output directory")->required();
    synth->add_option("--n", synth_n, "image count override");
    synth->add_option("--seed", seed_override, "scene seed override");
    synth->callback([&] { run_synth_dataset(config_path, out, synth_n, seed_override); });

    CLI::App* train_cmd = app.add_subcommand("train", "train the generator on an LDR dataset");
    train_cmd->add_option("--config", config_path, "JSON config");
    train_cmd->add_option("--data", data_dir, "dataset directory")->required();
    train_cmd->add_option("--out", out, "run directory")->required();
    train_cmd->add_option("--steps", steps_override, "step count override");
    train_cmd->add_option("--seed", seed_override, "training seed override");
    train_cmd->add_option("--mode", mode_override, "glowgan or vanilla");
    train_cmd->callback(
        [&] { run_train(config_path, data_dir, out, steps_override, seed_override, mode_override); });

    CLI::App* sample_cmd = app.add_subcommand("sample", "draw generator samples from a checkpoint");
    sample_cmd->add_option("--ckpt", ckpt, "checkpoint file")->required();
    sample_cmd->add_option("--n", sample_n, "sample count");
    sample_cmd->add_option("--out", out, "output directory")->required();
    sample_cmd->add_option("--seed", seed, "latent seed");
    sample_cmd->add_flag("--hdr", hdr_only, "write only PFMs");
    sample_cmd->add_flag("--preview", preview_only, "write only preview PPMs");
    sample_cmd->callback([&] { run_sample(ckpt, sample_n, out, seed, hdr_only, preview_only); });

    CLI::App* sweep = app.add_subcommand("ev-sweep", "re-expose an HDR image across stops");
    sweep->add_option("--in", in_path, "input PFM")->required();
    sweep->add_option("--evs", evs_text, "stops, e.g. \"-3..3\" or \"-1,0,2.5\"")->required();
    sweep->add_option("--out", out, "output directory")->required();
    sweep->add_option("--beta", beta, "response beta");
    sweep->add_option("--gamma", gamma, "response gamma");
    sweep->callback([&] { run_ev_sweep(in_path, evs_text, out, beta, gamma); });

    CLI::App* invert_cmd = app.add_subcommand("invert", "reconstruct HDR from one LDR image");
    invert_cmd->add_option("--in", in_path, "input PPM")->required();
    invert_cmd->add_option("--ckpt", ckpt, "checkpoint file")->required();
    invert_cmd->add_option("--config", config_path, "JSON config");
    invert_cmd->add_option("--restarts", restarts, "restart count override");
    invert_cmd->add_option("--seed", seed_override, "inversion seed override");
    invert_cmd->add_option("--out", out, "output directory")->required();
    invert_cmd->callback(
        [&] { run_invert(in_path, ckpt, config_path, restarts, seed_override, out); });

    CLI::App* merge_cmd = app.add_subcommand("merge", "merge a bracketed exposure stack");
    merge_cmd->add_option("--manifest", manifest, "CSV with header path,e")->required();
    merge_cmd->add_option("--beta", beta, "response beta");
    merge_cmd->add_option("--gamma", gamma, "response gamma");
    merge_cmd->add_option("--out", out, "output PFM")->required();
    merge_cmd->callback([&] { run_merge(manifest, beta, gamma, out); });

    CLI::App* metrics_cmd = app.add_subcommand("metrics", "dynamic-range stats for a run or image set");
    CLI::Option* opt_run = metrics_cmd->add_option("--run", run_dir, "run directory (trainlog.csv)");
    CLI::Option* opt_images = metrics_cmd->add_option("--images", images_dir, "directory of PFMs");
    metrics_cmd->add_option("--hist", hist_out, "also write a log2 histogram CSV (--images mode)");
    opt_run->excludes(opt_images);
    metrics_cmd->callback([&] {
        if (run_dir.empty() && images_dir.empty())
            throw CLI::RequiredError("metrics: one of --run/--images");
        run_metrics(run_dir, images_dir, hist_out);
    });

    CLI::App* interp = app.add_subcommand("interpolate", "latent path between two seeds");
    interp->add_option("--ckpt", ckpt, "checkpoint file")->required();
    interp->add_option("--seed1", seed1, "first latent seed");
    interp->add_option("--seed2", seed2, "second latent seed");
    interp->add_option("--steps", interp_steps, "frame count");
    interp->add_option("--out", out, "output directory")->required();
    interp->callback([&] { run_interpolate(ckpt, seed1, seed2, interp_steps, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const invalid_input& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
