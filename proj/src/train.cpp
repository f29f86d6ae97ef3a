#include "glow/train.hpp"

#include <cmath>
#include <fstream>

#include "glow/errors.hpp"
#include "glow/metrics.hpp"

namespace glow {

using nn::ParamBlock;

void TrainConfig::validate() const {
    if (batch < 1 || steps < 0) throw invalid_input("train config: batch/steps out of range");
    if (lr_g <= 0.0 || lr_d <= 0.0) throw invalid_input("train config: learning rates must be positive");
    if (k < 1 || L < 2 || width < 1 || d_width < 1)
        throw invalid_input("train config: architecture out of range");
    if (metric_cadence < 0) throw invalid_input("train config: cadence must be >= 0");
    if (priors.sigma_e_sq < 0.0) throw invalid_input("train config: exposure variance negative");
}

void write_trainlog_csv(const TrainLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out.precision(10);
    out << "step,g_loss,d_loss,dr50,dr90,hist_chi2\n";
    for (const TrainLogRow& r : log.rows)
        out << r.step << "," << r.g_loss << "," << r.d_loss << "," << r.dr50 << "," << r.dr90
            << "," << r.hist_chi2 << "\n";
    if (!out) throw invalid_input("write failed for '" + path + "'");
}

namespace {

std::vector<double> draw_latents(Rng& rng, int n, int k) {
    std::vector<double> z(static_cast<size_t>(n) * k);
    for (double& v : z) v = rng.normal();
    return z;
}

/// Fake LDR batch, values only (no backward pass needed on this tape).
std::vector<double> make_fake_batch(const nn::GeneratorParams& g, const TrainConfig& cfg,
                                    const std::vector<double>& z, int m,
                                    const CameraDraws& cams) {
    ad::Tape tape;
    ad::Tensor zt = tape.leaf(z, m, g.k);
    nn::GeneratorGraph gen = nn::build_generator(tape, g, zt);
    if (cfg.mode == TrainMode::GlowGan)
        return tape.values(nn::build_camera(tape, gen.radiance, cams.e, cams.crf));
    return tape.values(gen.radiance);
}

std::vector<double> gather_real_batch(const Dataset& data, Rng& rng, int m, int raster) {
    std::vector<double> out(static_cast<size_t>(m) * raster);
    for (int i = 0; i < m; ++i) {
        const size_t idx =
            static_cast<size_t>(rng.uniform_int(0, static_cast<long long>(data.size()) - 1));
        const LdrImage& img = data.ldr[idx];
        if (static_cast<int>(img.data.size()) != raster)
            throw invalid_input("dataset raster does not match the generator");
        for (int j = 0; j < raster; ++j)
            out[static_cast<size_t>(i) * raster + j] = static_cast<double>(img.data[static_cast<size_t>(j)]);
    }
    return out;
}

}  // namespace

CameraDraws sample_camera_batch(const CameraPriors& priors, int n, Rng& rng) {
    if (n < 1) throw invalid_input("camera batch needs n >= 1");
    CameraDraws out;
    out.e.resize(static_cast<size_t>(n));
    out.crf.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.e[static_cast<size_t>(i)] = sample_exposure(priors, rng);
        out.crf[static_cast<size_t>(i)] = sample_crf(priors, rng);
    }
    return out;
}

TrainResult train(const Dataset& data, const TrainConfig& cfg,
                  const std::function<void(long, const TrainResult&)>& on_checkpoint) {
    cfg.validate();
    if (data.size() == 0) throw invalid_input("training needs a nonempty dataset");

    Rng rng(cfg.seed);
    const nn::HeadMode head =
        cfg.mode == TrainMode::GlowGan ? nn::HeadMode::Log2Radiance : nn::HeadMode::SigmoidLdr;
    const int h = data.ldr[0].height, w = data.ldr[0].width, c = data.ldr[0].channels;

    TrainResult res;
    res.g = nn::init_generator(cfg.k, cfg.L, cfg.width, h, w, c, head, rng);
    res.d = nn::init_discriminator(res.g.raster_size(), cfg.d_width, rng);
    const int raster = res.g.raster_size();

    nn::AdamState adam_g(cfg.lr_g), adam_d(cfg.lr_d);
    const std::uint64_t eval_base = Rng::derive(cfg.seed, 0xE7A1);

    for (long step = 0; step < cfg.steps; ++step) {
        // --- discriminator update (fakes detached)
        std::vector<double> z_d = draw_latents(rng, cfg.batch, cfg.k);
        CameraDraws cams_d = sample_camera_batch(cfg.priors, cfg.batch, rng);
        std::vector<double> fake = make_fake_batch(res.g, cfg, z_d, cfg.batch, cams_d);
        std::vector<double> real = gather_real_batch(data, rng, cfg.batch, raster);

        double d_loss;
        {
            // one pass over the stacked batch; sign weights turn the row
            // means into softplus(-D(real)) + softplus(D(fake))
            std::vector<double> both = real;
            both.insert(both.end(), fake.begin(), fake.end());
            std::vector<double> signs(static_cast<size_t>(2) * cfg.batch, 1.0);
            for (int i = 0; i < cfg.batch; ++i) signs[static_cast<size_t>(i)] = -1.0;

            ad::Tape tape;
            ad::Tensor input = tape.leaf(both, 2 * cfg.batch, raster);
            nn::DiscriminatorGraph disc = nn::build_discriminator(tape, res.d, input);
            ad::Tensor signed_logit = tape.mul_rows_const(disc.logit, signs);
            ad::Tensor loss = tape.mul_const(tape.mean(tape.softplus(signed_logit)), 2.0);
            tape.backward(loss);
            d_loss = tape.value_scalar(loss);

            std::vector<const std::vector<double>*> grads;
            for (ad::Tensor leaf : disc.leaves) grads.push_back(&tape.grad(leaf));
            adam_step(adam_d, res.d.all_blocks(), grads);
        }

        // --- generator update (fresh draws, gradients flow through capture)
        std::vector<double> z_g = draw_latents(rng, cfg.batch, cfg.k);
        CameraDraws cams_g = sample_camera_batch(cfg.priors, cfg.batch, rng);

        double g_loss;
        {
            ad::Tape tape;
            ad::Tensor zt = tape.leaf(z_g, cfg.batch, cfg.k);
            nn::GeneratorGraph gen = nn::build_generator(tape, res.g, zt);
            ad::Tensor ldr = cfg.mode == TrainMode::GlowGan
                                 ? nn::build_camera(tape, gen.radiance, cams_g.e, cams_g.crf)
                                 : gen.radiance;
            nn::DiscriminatorGraph disc = nn::build_discriminator(tape, res.d, ldr);
            ad::Tensor loss = tape.mean(tape.softplus(tape.mul_const(disc.logit, -1.0)));
            tape.backward(loss);
            g_loss = tape.value_scalar(loss);

            std::vector<const std::vector<double>*> grads;
            for (ad::Tensor leaf : gen.leaves) grads.push_back(&tape.grad(leaf));
            adam_step(adam_g, res.g.all_blocks(), grads);
        }

        const long done = step + 1;
        const bool cadence_hit =
            cfg.metric_cadence > 0 && (done % cfg.metric_cadence == 0 || done == cfg.steps);
        if (cadence_hit) {
            Rng eval_rng(Rng::derive(eval_base, static_cast<std::uint64_t>(done)));
            EvalRow ev = eval_distribution(res.g, data, cfg.priors, 256, eval_rng);
            res.log.rows.push_back({done, g_loss, d_loss, ev.dr50, ev.dr90, ev.hist_chi2});
            if (on_checkpoint) on_checkpoint(done, res);
        }
    }
    if (cfg.steps == 0 && on_checkpoint) on_checkpoint(0, res);
    return res;
}

std::vector<RadianceImage> sample_hdr(const nn::GeneratorParams& g, int n, Rng& rng) {
    if (n < 1) throw invalid_input("sample_hdr needs n >= 1");
    std::vector<RadianceImage> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<double> z(static_cast<size_t>(g.k));
        for (double& v : z) v = rng.normal();
        out.push_back(nn::generate(g, z));
    }
    return out;
}

std::vector<RadianceImage> interpolate(const nn::GeneratorParams& g, const std::vector<double>& z1,
                                       const std::vector<double>& z2, int steps) {
    if (steps < 2) throw invalid_input("interpolation needs at least the two endpoints");
    const std::vector<double> w1 = nn::map_latent(g, z1);
    const std::vector<double> w2 = nn::map_latent(g, z2);
    std::vector<RadianceImage> out;
    out.reserve(static_cast<size_t>(steps));
    for (int s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) / (steps - 1);
        std::vector<double> w(w1.size());
        for (size_t i = 0; i < w.size(); ++i) w[i] = w1[i] * (1.0 - t) + w2[i] * t;
        out.push_back(nn::generate_wplus(g, std::vector<std::vector<double>>(static_cast<size_t>(g.L), w)));
    }
    return out;
}

EvalRow eval_distribution(const nn::GeneratorParams& g, const Dataset& data,
                          const CameraPriors& priors, int n, Rng& rng) {
    if (n < 1) throw invalid_input("eval needs n >= 1");
    if (data.size() == 0) throw invalid_input("eval needs a nonempty dataset");

    EvalRow row;
    std::vector<float> gen_ldr_values;
    std::vector<double> per_image_dr;
    per_image_dr.reserve(static_cast<size_t>(n));
    const bool hdr_head = g.head == nn::HeadMode::Log2Radiance;

    for (int i = 0; i < n; ++i) {
        std::vector<double> z(static_cast<size_t>(g.k));
        for (double& v : z) v = rng.normal();
        RadianceImage sample = nn::generate(g, z);
        if (hdr_head) {
            per_image_dr.push_back(dynamic_range(sample.data, kLogFloor));
            const double e = sample_exposure(priors, rng);
            const CrfParams p = sample_crf(priors, rng);
            LdrImage ldr = camera_project(sample, e, p);
            gen_ldr_values.insert(gen_ldr_values.end(), ldr.data.begin(), ldr.data.end());
        } else {
            // [0,1] head: the capture step is the identity and dynamic range
            // uses the 8-bit floor, matching the data these samples imitate
            per_image_dr.push_back(dynamic_range(sample.data, kLdrFloor));
            gen_ldr_values.insert(gen_ldr_values.end(), sample.data.begin(), sample.data.end());
        }
    }

    std::vector<float> data_values;
    data_values.reserve(data.size() * data.ldr[0].data.size());
    for (const LdrImage& img : data.ldr)
        data_values.insert(data_values.end(), img.data.begin(), img.data.end());

    Histogram hg = histogram_range(gen_ldr_values, HistScale::Linear, kEvalHistBins, 0.0, 1.0);
    Histogram hd = histogram_range(data_values, HistScale::Linear, kEvalHistBins, 0.0, 1.0);
    row.hist_chi2 = hist_chi2(hg, hd);

    auto sat_fraction = [](const std::vector<float>& vals) {
        size_t sat = 0;
        for (float v : vals) sat += (v >= kEvalSaturated);
        return static_cast<double>(sat) / static_cast<double>(vals.size());
    };
    row.sat_frac_gen = sat_fraction(gen_ldr_values);
    row.sat_frac_data = sat_fraction(data_values);
    row.sat_gap = std::abs(row.sat_frac_gen - row.sat_frac_data);

    DrStats stats = dr_percentiles(per_image_dr);
    row.dr50 = stats.dr50;
    row.dr90 = stats.dr90;
    return row;
}

}  // namespace glow
