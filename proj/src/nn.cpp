#include "glow/nn.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "glow/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace glow::nn {

namespace {

void fill_he_uniform(ParamBlock& b, Rng& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(b.rows));
    for (double& v : b.values) v = rng.uniform(-bound, bound);
}

void check_latent(const GeneratorParams& g, size_t n) {
    if (n != static_cast<size_t>(g.k)) throw invalid_input("latent dimension mismatch");
}

}  // namespace

std::vector<ParamBlock*> GeneratorParams::all_blocks() {
    std::vector<ParamBlock*> out{&map_w1, &map_b1, &map_w2, &map_b2};
    for (ParamBlock* p : synthesis_blocks()) out.push_back(p);
    return out;
}

std::vector<const ParamBlock*> GeneratorParams::all_blocks() const {
    auto mut = const_cast<GeneratorParams*>(this)->all_blocks();
    return {mut.begin(), mut.end()};
}

std::vector<ParamBlock*> GeneratorParams::synthesis_blocks() {
    std::vector<ParamBlock*> out{&h0};
    for (Layer& l : layers) {
        out.push_back(&l.w);
        out.push_back(&l.b);
        out.push_back(&l.style_scale_w);
        out.push_back(&l.style_scale_b);
        out.push_back(&l.style_shift_w);
        out.push_back(&l.style_shift_b);
    }
    out.push_back(&head_w);
    out.push_back(&head_b);
    return out;
}

std::vector<ParamBlock*> DiscriminatorParams::all_blocks() {
    return {&w1, &b1, &w2, &b2, &w3, &b3};
}

std::vector<const ParamBlock*> DiscriminatorParams::all_blocks() const {
    auto mut = const_cast<DiscriminatorParams*>(this)->all_blocks();
    return {mut.begin(), mut.end()};
}

GeneratorParams init_generator(int k, int L, int width, int out_h, int out_w, int out_c,
                               HeadMode head, Rng& rng) {
    if (k < 1 || L < 2 || width < 1 || out_h < 1 || out_w < 1 || (out_c != 1 && out_c != 3))
        throw invalid_input("generator architecture out of range (L must be >= 2)");
    GeneratorParams g;
    g.k = k;
    g.L = L;
    g.width = width;
    g.out_h = out_h;
    g.out_w = out_w;
    g.out_c = out_c;
    g.head = head;

    g.map_w1 = ParamBlock(k, k);
    g.map_b1 = ParamBlock(1, k);
    g.map_w2 = ParamBlock(k, k);
    g.map_b2 = ParamBlock(1, k);
    fill_he_uniform(g.map_w1, rng);
    fill_he_uniform(g.map_w2, rng);

    g.h0 = ParamBlock(1, width);
    for (double& v : g.h0.values) v = rng.uniform(-1.0, 1.0);

    g.layers.resize(static_cast<size_t>(L));
    for (auto& l : g.layers) {
        l.w = ParamBlock(width, width);
        l.b = ParamBlock(1, width);
        l.style_scale_w = ParamBlock(k, width);
        l.style_scale_b = ParamBlock(1, width);
        l.style_shift_w = ParamBlock(k, width);
        l.style_shift_b = ParamBlock(1, width);
        fill_he_uniform(l.w, rng);
        fill_he_uniform(l.style_scale_w, rng);
        fill_he_uniform(l.style_shift_w, rng);
    }

    g.head_w = ParamBlock(width, g.raster_size());
    g.head_b = ParamBlock(1, g.raster_size());
    fill_he_uniform(g.head_w, rng);
    return g;
}

DiscriminatorParams init_discriminator(int in_dim, int width, Rng& rng) {
    if (in_dim < 1 || width < 1) throw invalid_input("discriminator architecture out of range");
    DiscriminatorParams d;
    d.in_dim = in_dim;
    d.width = width;
    d.w1 = ParamBlock(in_dim, width);
    d.b1 = ParamBlock(1, width);
    d.w2 = ParamBlock(width, width);
    d.b2 = ParamBlock(1, width);
    d.w3 = ParamBlock(width, 1);
    d.b3 = ParamBlock(1, 1);
    fill_he_uniform(d.w1, rng);
    fill_he_uniform(d.w2, rng);
    fill_he_uniform(d.w3, rng);
    return d;
}

namespace {

ad::Tensor block_leaf(ad::Tape& tape, const ParamBlock& b) {
    return tape.leaf(b.values, b.rows, b.cols);
}

}  // namespace

MappingGraph build_mapping(ad::Tape& tape, const GeneratorParams& g, ad::Tensor z) {
    if (tape.cols(z) != g.k) throw invalid_input("latent dimension mismatch");
    MappingGraph out;
    ad::Tensor w1 = block_leaf(tape, g.map_w1);
    ad::Tensor b1 = block_leaf(tape, g.map_b1);
    ad::Tensor w2 = block_leaf(tape, g.map_w2);
    ad::Tensor b2 = block_leaf(tape, g.map_b2);
    out.leaves = {w1, b1, w2, b2};
    ad::Tensor h = tape.tanh(tape.add_rowvec(tape.matmul(z, w1), b1));
    out.w = tape.tanh(tape.add_rowvec(tape.matmul(h, w2), b2));
    return out;
}

SynthesisGraph build_synthesis(ad::Tape& tape, const GeneratorParams& g,
                               const std::vector<ad::Tensor>& w_per_layer) {
    if (w_per_layer.empty() || w_per_layer.size() != static_cast<size_t>(g.L))
        throw invalid_input("one style vector per synthesis layer required");
    const int m = tape.rows(w_per_layer[0]);
    for (ad::Tensor w : w_per_layer)
        if (tape.rows(w) != m || tape.cols(w) != g.k)
            throw invalid_input("style vector shape mismatch");

    SynthesisGraph out;
    ad::Tensor h0 = block_leaf(tape, g.h0);
    out.leaves.push_back(h0);
    ad::Tensor h = tape.broadcast_rows(h0, m);
    for (int i = 0; i < g.L; ++i) {
        const auto& l = g.layers[static_cast<size_t>(i)];
        ad::Tensor w = block_leaf(tape, l.w);
        ad::Tensor b = block_leaf(tape, l.b);
        ad::Tensor ssw = block_leaf(tape, l.style_scale_w);
        ad::Tensor ssb = block_leaf(tape, l.style_scale_b);
        ad::Tensor stw = block_leaf(tape, l.style_shift_w);
        ad::Tensor stb = block_leaf(tape, l.style_shift_b);
        out.leaves.insert(out.leaves.end(), {w, b, ssw, ssb, stw, stb});

        ad::Tensor u = tape.add_rowvec(tape.matmul(h, w), b);
        ad::Tensor style = w_per_layer[static_cast<size_t>(i)];
        ad::Tensor scale = tape.add_const(tape.add_rowvec(tape.matmul(style, ssw), ssb), 1.0);
        ad::Tensor shift = tape.add_rowvec(tape.matmul(style, stw), stb);
        h = tape.tanh(tape.add(tape.mul(u, scale), shift));
    }
    ad::Tensor hw = block_leaf(tape, g.head_w);
    ad::Tensor hb = block_leaf(tape, g.head_b);
    out.leaves.push_back(hw);
    out.leaves.push_back(hb);
    ad::Tensor o = tape.add_rowvec(tape.matmul(h, hw), hb);
    if (g.head == HeadMode::Log2Radiance) {
        o = tape.min_const(tape.max_const(o, -kLogHeadClamp), kLogHeadClamp);
        out.radiance = tape.exp2(o);
    } else {
        out.radiance = tape.sigmoid(o);
    }
    return out;
}

GeneratorGraph build_generator(ad::Tape& tape, const GeneratorParams& g, ad::Tensor z) {
    GeneratorGraph out;
    MappingGraph map = build_mapping(tape, g, z);
    std::vector<ad::Tensor> styles(static_cast<size_t>(g.L), map.w);
    SynthesisGraph synth = build_synthesis(tape, g, styles);
    out.w = map.w;
    out.radiance = synth.radiance;
    out.leaves = map.leaves;
    out.leaves.insert(out.leaves.end(), synth.leaves.begin(), synth.leaves.end());
    return out;
}

DiscriminatorGraph build_discriminator(ad::Tape& tape, const DiscriminatorParams& d,
                                       ad::Tensor input) {
    if (tape.cols(input) != d.in_dim) throw invalid_input("discriminator input width mismatch");
    DiscriminatorGraph out;
    ad::Tensor w1 = block_leaf(tape, d.w1);
    ad::Tensor b1 = block_leaf(tape, d.b1);
    ad::Tensor w2 = block_leaf(tape, d.w2);
    ad::Tensor b2 = block_leaf(tape, d.b2);
    ad::Tensor w3 = block_leaf(tape, d.w3);
    ad::Tensor b3 = block_leaf(tape, d.b3);
    out.leaves = {w1, b1, w2, b2, w3, b3};
    ad::Tensor h = tape.softplus(tape.add_rowvec(tape.matmul(input, w1), b1));
    h = tape.softplus(tape.add_rowvec(tape.matmul(h, w2), b2));
    out.logit = tape.add_rowvec(tape.matmul(h, w3), b3);
    return out;
}

ad::Tensor build_camera(ad::Tape& tape, ad::Tensor radiance, const std::vector<double>& e_per_row,
                        const std::vector<CrfParams>& crf_per_row) {
    const size_t m = static_cast<size_t>(tape.rows(radiance));
    if (e_per_row.size() != m || crf_per_row.size() != m)
        throw invalid_input("one camera draw per batch row required");
    std::vector<double> factors(m), gammas(m), betas(m), one_plus_betas(m);
    for (size_t i = 0; i < m; ++i) {
        factors[i] = exposure_factor(e_per_row[i]);
        gammas[i] = crf_per_row[i].gamma;
        betas[i] = crf_per_row[i].beta;
        one_plus_betas[i] = 1.0 + crf_per_row[i].beta;
    }
    ad::Tensor x = tape.min_const(tape.mul_rows_const(radiance, factors), 1.0);
    ad::Tensor u = tape.pow_rows_const(x, gammas);
    ad::Tensor num = tape.mul_rows_const(u, one_plus_betas);
    ad::Tensor den = tape.add_rows_const(u, betas);
    return tape.mul(num, tape.pow_const(den, -1.0));
}

ad::Tensor build_camera_e(ad::Tape& tape, ad::Tensor radiance, ad::Tensor e, const CrfParams& p) {
    ad::Tensor factor = tape.exp2(tape.mul_const(e, 0.5));
    ad::Tensor x = tape.min_const(tape.mul_scalar_t(radiance, factor), 1.0);
    ad::Tensor u = tape.pow_const(x, p.gamma);
    ad::Tensor num = tape.mul_const(u, 1.0 + p.beta);
    ad::Tensor den = tape.add_const(u, p.beta);
    return tape.mul(num, tape.pow_const(den, -1.0));
}

namespace {

RadianceImage raster_from_row(const GeneratorParams& g, const std::vector<double>& row) {
    RadianceImage img(g.out_w, g.out_h, g.out_c);
    for (size_t i = 0; i < row.size(); ++i) img.data[i] = static_cast<float>(row[i]);
    return img;
}

}  // namespace

std::vector<double> map_latent(const GeneratorParams& g, const std::vector<double>& z) {
    check_latent(g, z.size());
    ad::Tape tape;
    ad::Tensor zt = tape.leaf(z, 1, g.k);
    MappingGraph map = build_mapping(tape, g, zt);
    return tape.values(map.w);
}

RadianceImage generate(const GeneratorParams& g, const std::vector<double>& z) {
    check_latent(g, z.size());
    ad::Tape tape;
    ad::Tensor zt = tape.leaf(z, 1, g.k);
    GeneratorGraph graph = build_generator(tape, g, zt);
    return raster_from_row(g, tape.values(graph.radiance));
}

RadianceImage generate_wplus(const GeneratorParams& g,
                             const std::vector<std::vector<double>>& w_per_layer) {
    ad::Tape tape;
    std::vector<ad::Tensor> styles;
    for (const auto& w : w_per_layer) {
        check_latent(g, w.size());
        styles.push_back(tape.leaf(w, 1, g.k));
    }
    SynthesisGraph synth = build_synthesis(tape, g, styles);
    return raster_from_row(g, tape.values(synth.radiance));
}

void adam_step(AdamState& state, const std::vector<ParamBlock*>& blocks,
               const std::vector<const std::vector<double>*>& grads) {
    if (blocks.size() != grads.size()) throw invalid_input("adam: one gradient per block");
    if (state.m.empty()) {
        state.m.resize(blocks.size());
        state.v.resize(blocks.size());
        for (size_t i = 0; i < blocks.size(); ++i) {
            state.m[i].assign(blocks[i]->size(), 0.0);
            state.v[i].assign(blocks[i]->size(), 0.0);
        }
    }
    if (state.m.size() != blocks.size()) throw invalid_input("adam: block count changed");

    ++state.step;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (size_t i = 0; i < blocks.size(); ++i) {
        ParamBlock& p = *blocks[i];
        const std::vector<double>& g = *grads[i];
        if (g.size() != p.size()) throw invalid_input("adam: gradient shape mismatch");
        std::vector<double>& m = state.m[i];
        std::vector<double>& v = state.v[i];
        for (size_t j = 0; j < p.size(); ++j) {
            m[j] = state.beta1 * m[j] + (1.0 - state.beta1) * g[j];
            v[j] = state.beta2 * v[j] + (1.0 - state.beta2) * g[j] * g[j];
            const double mh = m[j] / bc1;
            const double vh = v[j] / bc2;
            p.values[j] -= state.lr * mh / (std::sqrt(vh) + state.eps);
            if (!std::isfinite(p.values[j])) throw numeric_error("non-finite parameter after adam step");
        }
    }
}

namespace {

constexpr char kMagic[4] = {'G', 'L', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t read_u32(std::ifstream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    if (!in) throw invalid_input("truncated checkpoint");
    return v;
}

void write_block(std::ofstream& out, const ParamBlock& b) {
    std::vector<float> f(b.size());
    for (size_t i = 0; i < b.size(); ++i) f[i] = static_cast<float>(b.values[i]);
    out.write(reinterpret_cast<const char*>(f.data()), static_cast<std::streamsize>(f.size() * 4));
}

void read_block(std::ifstream& in, ParamBlock& b) {
    std::vector<float> f(b.size());
    in.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(f.size() * 4));
    if (!in) throw invalid_input("truncated checkpoint");
    for (size_t i = 0; i < b.size(); ++i) {
        if (!std::isfinite(f[i])) throw invalid_input("non-finite checkpoint parameter");
        b.values[i] = static_cast<double>(f[i]);
    }
}

}  // namespace

void save_checkpoint(const GeneratorParams& g, const DiscriminatorParams& d,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out.write(kMagic, 4);
    write_u32(out, kVersion);
    write_u32(out, static_cast<std::uint32_t>(g.head));
    for (int v : {g.k, g.L, g.width, g.out_h, g.out_w, g.out_c, d.in_dim, d.width})
        write_u32(out, static_cast<std::uint32_t>(v));
    for (const ParamBlock* b : g.all_blocks()) write_block(out, *b);
    for (const ParamBlock* b : d.all_blocks()) write_block(out, *b);
    if (!out) throw invalid_input("write failed for '" + path + "'");
}

void load_checkpoint(GeneratorParams& g, DiscriminatorParams& d, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw invalid_input("'" + path + "': not a checkpoint file");
    if (read_u32(in) != kVersion) throw invalid_input("'" + path + "': unsupported version");
    const auto head = static_cast<HeadMode>(read_u32(in));
    if (head != HeadMode::Log2Radiance && head != HeadMode::SigmoidLdr)
        throw invalid_input("'" + path + "': unknown head mode");
    const int k = static_cast<int>(read_u32(in));
    const int L = static_cast<int>(read_u32(in));
    const int width = static_cast<int>(read_u32(in));
    const int out_h = static_cast<int>(read_u32(in));
    const int out_w = static_cast<int>(read_u32(in));
    const int out_c = static_cast<int>(read_u32(in));
    const int d_in = static_cast<int>(read_u32(in));
    const int d_width = static_cast<int>(read_u32(in));
    if (k < 1 || k > 4096 || L < 2 || L > 64 || width < 1 || width > 65536 ||
        out_h < 1 || out_h > 4096 || out_w < 1 || out_w > 4096 || (out_c != 1 && out_c != 3) ||
        d_in < 1 || d_in > (1 << 24) || d_width < 1 || d_width > 65536)
        throw invalid_input("'" + path + "': architecture descriptor out of range");

    Rng scratch(0);
    g = init_generator(k, L, width, out_h, out_w, out_c, head, scratch);
    d = init_discriminator(d_in, d_width, scratch);
    for (ParamBlock* b : g.all_blocks()) read_block(in, *b);
    for (ParamBlock* b : d.all_blocks()) read_block(in, *b);
    char extra;
    if (in.read(&extra, 1)) throw invalid_input("'" + path + "': trailing bytes");
}

}  // namespace glow::nn
