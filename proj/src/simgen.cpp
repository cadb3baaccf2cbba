#include "bdcp/simgen.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bdcp/rng.hpp"

namespace bdcp::sim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDim = 3;
constexpr std::size_t kGarchBurnIn = 50;

enum class Innov { Normal, T3, Cauchy };

double draw_innov(RngStream &rng, Innov kind) {
    switch (kind) {
        case Innov::Normal: return rng.normal();
        case Innov::T3: return rng.student_t(3);
        case Innov::Cauchy: return rng.cauchy();
    }
    return 0.0;
}

using Vec3 = std::array<double, 3>;

struct AffineBlock {
    std::size_t length = 0;
    Vec3 shift{0.0, 0.0, 0.0};
    Vec3 scale{1.0, 1.0, 1.0};
};

std::vector<double> gen_iid(RngStream &rng, Innov kind,
                            const std::vector<AffineBlock> &blocks) {
    std::vector<double> out;
    for (const auto &blk : blocks) {
        for (std::size_t t = 0; t < blk.length; ++t) {
            for (std::size_t k = 0; k < kDim; ++k)
                out.push_back(blk.shift[k] + blk.scale[k] * draw_innov(rng, kind));
        }
    }
    return out;
}

// First-order moving average 0.5*eps_t + 0.5*eps_{t-1} driven by a single
// innovation stream; block transforms switch at the boundaries while the
// stream continues, so adjacent segments stay dependent.
std::vector<double> gen_ma1(RngStream &rng, Innov kind,
                            const std::vector<AffineBlock> &blocks) {
    std::vector<double> out;
    Vec3 prev;
    for (std::size_t k = 0; k < kDim; ++k) prev[k] = draw_innov(rng, kind);
    for (const auto &blk : blocks) {
        for (std::size_t t = 0; t < blk.length; ++t) {
            for (std::size_t k = 0; k < kDim; ++k) {
                const double eps = draw_innov(rng, kind);
                out.push_back(blk.shift[k] + blk.scale[k] * 0.5 * (eps + prev[k]));
                prev[k] = eps;
            }
        }
    }
    return out;
}

struct GarchBlock {
    std::size_t length = 0;
    Vec3 omega{};
    Vec3 arch{};   // coefficient on the lagged squared value
    Vec3 garch{};  // coefficient on the lagged conditional variance
};

// Per-coordinate GARCH(1,1) recursion. The variance state carries across
// block boundaries; only the coefficients switch.
std::vector<double> gen_garch(RngStream &rng, Innov kind,
                              const std::vector<GarchBlock> &blocks) {
    Vec3 sig2, x_prev{0.0, 0.0, 0.0};
    const GarchBlock &first = blocks.front();
    for (std::size_t k = 0; k < kDim; ++k) {
        const double persist = first.arch[k] + first.garch[k];
        sig2[k] = persist < 1.0 ? first.omega[k] / (1.0 - persist) : first.omega[k];
    }

    auto step = [&](const GarchBlock &blk, double *dest) {
        for (std::size_t k = 0; k < kDim; ++k) {
            sig2[k] = blk.omega[k] + blk.arch[k] * x_prev[k] * x_prev[k] +
                      blk.garch[k] * sig2[k];
            const double x = std::sqrt(sig2[k]) * draw_innov(rng, kind);
            x_prev[k] = x;
            if (dest) dest[k] = x;
        }
    };

    for (std::size_t t = 0; t < kGarchBurnIn; ++t) step(first, nullptr);

    std::vector<double> out;
    std::size_t total = 0;
    for (const auto &blk : blocks) total += blk.length;
    out.resize(total * kDim);
    std::size_t pos = 0;
    for (const auto &blk : blocks) {
        for (std::size_t t = 0; t < blk.length; ++t, pos += kDim)
            step(blk, out.data() + pos);
    }
    return out;
}

// Uniform over the union of two equal-width arcs.
double sample_two_arcs(RngStream &rng, double lo1, double lo2, double width) {
    const double u = rng.uniform();
    return u < 0.5 ? lo1 + width * (2.0 * u) : lo2 + width * (2.0 * u - 1.0);
}

enum class ArcDist { P1, P2, P3, P4, P5 };

double sample_arc_dist(RngStream &rng, ArcDist dist) {
    constexpr double w = kPi / 3.0;
    switch (dist) {
        case ArcDist::P1: return sample_two_arcs(rng, -kPi / 6.0, 11.0 * kPi / 6.0, w);
        case ArcDist::P2: return sample_two_arcs(rng, kPi / 3.0, 7.0 * kPi / 3.0, w);
        case ArcDist::P3: return sample_two_arcs(rng, 5.0 * kPi / 6.0, 17.0 * kPi / 6.0, w);
        case ArcDist::P4: return sample_two_arcs(rng, 4.0 * kPi / 3.0, 10.0 * kPi / 3.0, w);
        case ArcDist::P5: return rng.uniform(0.0, 4.0 * kPi);
    }
    return 0.0;
}

std::vector<double> gen_circular(RngStream &rng,
                                 const std::vector<std::pair<ArcDist, std::size_t>> &blocks) {
    std::vector<double> out;
    for (const auto &[dist, length] : blocks) {
        for (std::size_t t = 0; t < length; ++t)
            out.push_back(sample_arc_dist(rng, dist));
    }
    return out;
}

Vec3 broadcast(double v) { return {v, v, v}; }

const std::vector<std::string> kMuMenu = {"mu=(4,4,4)", "mu=(6,6,6)", "mu=(8,8,8)"};
const std::vector<std::string> kSigmaMenu = {"sigma=(3,3,3)", "sigma=(5,5,5)",
                                             "sigma=(7,7,7)"};
const std::vector<std::string> kCauchySigmaMenu = {
    "sigma=(9,9,9)", "sigma=(16,16,16)", "sigma=(25,25,25)"};
const std::vector<std::string> kCaseMenu = {"case 1", "case 2", "case 3"};
const std::vector<std::string> kFixed = {"fixed"};

constexpr double kMuRows[3] = {4.0, 6.0, 8.0};
constexpr double kSigmaRows[3] = {3.0, 5.0, 7.0};
constexpr double kCauchySigmaRows[3] = {9.0, 16.0, 25.0};
// Multipliers applied to the baseline (omega, arch, garch) coefficients.
constexpr double kCaseRows[3][3] = {{2.0, 4.0, 5.0}, {3.0, 5.0, 6.0}, {4.0, 6.0, 7.0}};

const Vec3 kCccOmega = {0.01, 0.01, 0.01};
const Vec3 kCccArch = {0.02, 0.03, 0.01};
const Vec3 kCccGarch = {0.02, 0.02, 0.05};

}  // namespace

const std::vector<ExampleInfo> &catalog() {
    static const std::vector<ExampleInfo> entries = {
        {"4.1.1", "no change; iid trivariate normal", 0, kFixed, false, false},
        {"4.1.2", "no change; iid trivariate t(3)", 0, kFixed, false, false},
        {"4.1.3", "no change; iid trivariate Cauchy", 0, kFixed, false, false},
        {"4.1.4", "no change; trivariate MA(1), normal innovations", 0, kFixed, false,
         false},
        {"4.1.5", "no change; trivariate MA(1), t(3) innovations", 0, kFixed, false,
         false},
        {"4.1.6", "no change; per-coordinate GARCH(1,1), normal innovations", 0, kFixed,
         false, false},
        {"4.1.7", "no change; per-coordinate GARCH(1,1), t(3) innovations", 0, kFixed,
         false, false},
        {"4.1.8", "mean shift in MA(1), normal innovations", 2, kMuMenu, false, true},
        {"4.1.9", "mean shift in MA(1), t(3) innovations", 2, kMuMenu, false, true},
        {"4.1.10", "mean shift, iid Cauchy", 2, kMuMenu, false, true},
        {"4.1.11", "scale shift in MA(1), normal innovations", 2, kSigmaMenu, false,
         true},
        {"4.1.12", "scale shift in MA(1), t(3) innovations", 2, kSigmaMenu, false, true},
        {"4.1.13", "scale shift, iid Cauchy", 2, kCauchySigmaMenu, false, true},
        {"4.1.14", "GARCH coefficient shift, normal innovations", 2, kCaseMenu, false,
         true},
        {"4.1.15", "GARCH coefficient shift, t(3) innovations", 2, kCaseMenu, false,
         true},
        {"4.2.1", "no change; circular uniform over [0, 4pi)", 0, kFixed, true, false},
        {"4.2.2", "one change between circular arc mixtures", 1, kFixed, true, true},
        {"4.2.3", "two changes between circular arc mixtures", 2, kFixed, true, true},
        {"4.2.4", "three changes between circular arc mixtures", 3, kFixed, true, true},
    };
    return entries;
}

const ExampleInfo *find_example(const std::string &id) {
    for (const auto &info : catalog()) {
        if (info.id == id) return &info;
    }
    return nullptr;
}

GeneratedSeries generate(const ExampleSpec &spec) {
    const ExampleInfo *info = find_example(spec.id);
    if (!info) throw InvalidInput("unknown example id: " + spec.id);
    if (spec.n == 0) throw InvalidInput("n must be >= 1");
    if (info->uses_m && spec.m == 0) throw InvalidInput("m must be >= 1");
    if (spec.param_index >= info->params.size())
        throw InvalidInput("param_index out of range for example " + spec.id);

    const std::size_t n = spec.n;
    const std::size_t m = spec.m;
    RngStream rng = RngStream::derive(spec.seed, 0x51EC0DE5ULL);

    const std::string &id = spec.id;
    const auto mu = broadcast(kMuRows[spec.param_index]);
    const Vec3 one = broadcast(1.0);
    const Vec3 zero = broadcast(0.0);

    GeneratedSeries result;
    auto two_cp = [&] { result.changepoints = {n, n + m}; };

    if (id == "4.1.1" || id == "4.1.2" || id == "4.1.3") {
        const Innov kind = id == "4.1.1"   ? Innov::Normal
                           : id == "4.1.2" ? Innov::T3
                                           : Innov::Cauchy;
        result.series = Series::from_points(kDim, gen_iid(rng, kind, {{3 * n, zero, one}}));
    } else if (id == "4.1.4" || id == "4.1.5") {
        const Innov kind = id == "4.1.4" ? Innov::Normal : Innov::T3;
        result.series = Series::from_points(kDim, gen_ma1(rng, kind, {{3 * n, zero, one}}));
    } else if (id == "4.1.6" || id == "4.1.7") {
        const Innov kind = id == "4.1.6" ? Innov::Normal : Innov::T3;
        const GarchBlock blk{3 * n, broadcast(0.02), broadcast(0.05), broadcast(0.02)};
        result.series = Series::from_points(kDim, gen_garch(rng, kind, {blk}));
    } else if (id == "4.1.8" || id == "4.1.9") {
        const Innov kind = id == "4.1.8" ? Innov::Normal : Innov::T3;
        result.series = Series::from_points(
            kDim, gen_ma1(rng, kind, {{n, zero, one}, {m, mu, one}, {n, zero, one}}));
        two_cp();
    } else if (id == "4.1.10") {
        result.series = Series::from_points(
            kDim,
            gen_iid(rng, Innov::Cauchy, {{n, zero, one}, {m, mu, one}, {n, zero, one}}));
        two_cp();
    } else if (id == "4.1.11" || id == "4.1.12") {
        const Innov kind = id == "4.1.11" ? Innov::Normal : Innov::T3;
        const Vec3 sigma = broadcast(kSigmaRows[spec.param_index]);
        result.series = Series::from_points(
            kDim, gen_ma1(rng, kind, {{n, zero, one}, {m, zero, sigma}, {n, zero, one}}));
        two_cp();
    } else if (id == "4.1.13") {
        const Vec3 sigma = broadcast(kCauchySigmaRows[spec.param_index]);
        result.series = Series::from_points(
            kDim, gen_iid(rng, Innov::Cauchy,
                          {{n, zero, one}, {m, zero, sigma}, {n, zero, one}}));
        two_cp();
    } else if (id == "4.1.14" || id == "4.1.15") {
        const Innov kind = id == "4.1.14" ? Innov::Normal : Innov::T3;
        const double *mult = kCaseRows[spec.param_index];
        GarchBlock x{n, kCccOmega, kCccArch, kCccGarch};
        GarchBlock y{m, kCccOmega, kCccArch, kCccGarch};
        for (std::size_t k = 0; k < kDim; ++k) {
            y.omega[k] *= mult[0];
            y.arch[k] *= mult[1];
            y.garch[k] *= mult[2];
        }
        result.series = Series::from_points(kDim, gen_garch(rng, kind, {x, y, x}));
        two_cp();
    } else if (id == "4.2.1") {
        result.series =
            Series::from_angles(gen_circular(rng, {{ArcDist::P5, 3 * n}}));
    } else if (id == "4.2.2") {
        result.series = Series::from_angles(
            gen_circular(rng, {{ArcDist::P1, n}, {ArcDist::P3, m}}));
        result.changepoints = {n};
    } else if (id == "4.2.3") {
        result.series = Series::from_angles(gen_circular(
            rng, {{ArcDist::P1, n}, {ArcDist::P3, m}, {ArcDist::P2, n}}));
        two_cp();
    } else if (id == "4.2.4") {
        result.series = Series::from_angles(
            gen_circular(rng, {{ArcDist::P1, n},
                               {ArcDist::P3, m},
                               {ArcDist::P2, n},
                               {ArcDist::P4, m}}));
        result.changepoints = {n, n + m, 2 * n + m};
    }
    return result;
}

}  // namespace bdcp::sim
