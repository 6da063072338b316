#include "commands.hpp"

#include "cifs/lattice.hpp"
#include "cifs/measure.hpp"
#include "cifs/moebius.hpp"
#include "cifs/pressure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

namespace cifs::cli {

using Json = nlohmann::ordered_json;

namespace {

struct Common {
    double        tau_u        = 0.0;
    double        tau_v        = 1.0;
    std::size_t   truncation   = 200;
    int           depth        = 1;
    double        tol          = 1e-10;
    std::string   out          = "-";
    std::uint64_t seed         = 0;
    bool          no_wall_time = false;

    Json echo() const {
        return {{"tau_u", tau_u}, {"tau_v", tau_v}, {"truncation", truncation}, {"depth", depth},
                {"tol", tol},     {"out", out},     {"seed", seed}};
    }
};

void add_common(CLI::App *cmd, Common &c, int default_depth = 1) {
    c.depth = default_depth;
    cmd->add_option("--tau-u", c.tau_u, "Real part u of tau (u >= 0)")->capture_default_str();
    cmd->add_option("--tau-v", c.tau_v, "Imaginary part v of tau (v >= 1)")->capture_default_str();
    cmd->add_option("--truncation", c.truncation, "Number of smallest-modulus indices kept")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--depth", c.depth, "Word length")->check(CLI::Range(1, kMaxWordLength))->capture_default_str();
    cmd->add_option("--tol", c.tol, "Root tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--out", c.out, "Output path, - for stdout")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Seed for sampling audits")->capture_default_str();
    cmd->add_flag("--no-wall-time", c.no_wall_time, "Write wall_time_s = 0 for byte-identical reports");
}

Json index_json(LatticeIndex idx) { return Json::array({idx.m, idx.n}); }

void write_text(const std::string &path, const std::string &text, std::ostream &out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
        throw std::runtime_error("cannot write " + path);
    }
}

/// Uncapped enumeration for the user-sized truncation; word-space limits still apply.
EnumerationCap cli_cap(std::size_t indices) { return {std::max<std::size_t>(indices, 5000), kMaxWordLength, 5.0e8}; }

struct Inputs {
    IndexSet          set;
    DimensionEstimate dim;
    DistortionReport  distortion;
    GrowthEstimate    growth;
    PackingConstants  constants;
};

// K from the level-1 distortion audit, (Q, C) from the annulus fit over R in [1, r_max],
// h from the length-1 Bowen root; all on the CLI truncation.
Inputs fit_inputs(const TauParam &tau, const Common &c, std::optional<double> h_override, double r_max) {
    IndexSet          set = smallest_indices(tau, c.truncation);
    DimensionEstimate dim = bowen_root(set, 1, c.tol, cli_cap(set.size()));
    if (h_override) {
        dim.h = *h_override;
    }
    const DistortionReport distortion = distortion_audit(SystemConfig{tau, set.bound, 1}, 1);
    std::vector<double>    grid;
    for (double r = 1.0; r <= r_max; r += 1.0) {
        grid.push_back(r);
    }
    const GrowthEstimate   growth    = fit_growth_constants(tau, grid);
    const PackingConstants constants = packing_constants(tau, distortion.k_hat, dim.h, growth.q_hat, growth.c_hat);
    return {std::move(set), dim, distortion, growth, constants};
}

Json constants_json(const PackingConstants &pc) {
    return {{"k", pc.k},           {"h", pc.h},         {"q", pc.q},         {"c", pc.c},
            {"q_prime", pc.q_prime}, {"c_prime", pc.c_prime}, {"r0", pc.r0},   {"xi", pc.xi},
            {"gamma", pc.gamma},   {"r_big0", pc.r_big0}, {"l_prime", pc.l_prime}, {"l", pc.l},
            {"n_tau", pc.n_tau},   {"lambda2", pc.lambda2}};
}

// ---------------------------------------------------------------------------------------------

int cmd_dim(const Common &c, Json &results) {
    const TauParam          tau(c.tau_u, c.tau_v);
    const IndexSet          set = smallest_indices(tau, c.truncation);
    const DimensionEstimate est = bowen_root(set, c.depth, c.tol, cli_cap(set.size()));
    results = {{"h", est.h},
               {"bracket", {est.bracket_lo, est.bracket_hi}},
               {"residual", est.residual},
               {"iterations", est.iterations},
               {"word_length", est.word_length},
               {"indices", set.size()},
               {"truncation_bound", set.bound},
               {"in_unit_interval", est.h > 1.0 && est.h < 2.0}};
    return kSuccess;
}

int cmd_render(const Common &c, int width, Json &results) {
    const TauParam tau(c.tau_u, c.tau_v);
    if (c.out == "-") {
        throw DomainError("render: --out must name the PGM file");
    }
    const IndexSet     set = smallest_indices(tau, c.truncation);
    const SystemConfig config{tau, set.bound, c.depth};
    const auto         points = sample_limit_set(config, 50'000'000);
    write_render(points, width, c.out);

    const Diskd  x       = domain_x();
    std::int64_t outside = 0;
    for (const ComplexPoint p : points) {
        if (std::abs(p - x.center) > x.radius + 1e-12) {
            ++outside;
        }
    }
    const auto   pixels = render_pgm(points, width);
    std::int64_t marked = 0;
    for (std::size_t i = pixels.size() - static_cast<std::size_t>(width) * width; i < pixels.size(); ++i) {
        marked += pixels[i] == 0 ? 1 : 0;
    }
    results = {{"points", points.size()},
               {"outside_x", outside},
               {"marked_pixels", marked},
               {"width", width},
               {"indices", set.size()},
               {"image", c.out}};
    return outside == 0 ? kSuccess : kViolation;
}

int cmd_audit_lattice(const Common &c, int r_max, Json &results) {
    const TauParam tau(c.tau_u, c.tau_v);
    if (r_max < 6) {
        throw DomainError("audit-lattice: --r-max must be >= 6");
    }
    BoundaryTally tally;
    std::int64_t  violations = 0;
    Json          first      = nullptr;
    for (std::int64_t r = 6; r <= r_max; ++r) {
        const std::int64_t count = count_quarter_disk(static_cast<double>(r), &tally);
        if (2 * count < r * r - 7 * r + 7 || count > r * r) {
            if (first.is_null()) {
                first = {{"r", r}, {"count", count}};
            }
            ++violations;
        }
    }

    std::vector<double> grid;
    for (int r = 1; r <= r_max; ++r) {
        grid.push_back(r);
    }
    const GrowthEstimate growth         = fit_growth_constants(tau, grid);
    std::int64_t         growth_missing = 0;
    for (const double r : growth.radii) {
        if (!(static_cast<double>(count_annulus(tau, r, &tally)) > growth.q_hat * r * r)) {
            ++growth_missing;
        }
    }
    results = {{"quarter_disk", {{"checked", r_max - 5}, {"violations", violations}, {"first_violation", first}}},
               {"growth",
                {{"q_hat", growth.q_hat},
                 {"c_hat", growth.c_hat},
                 {"fit_residual", growth.fit_residual},
                 {"audited", growth.radii.size()},
                 {"violations", growth_missing}}},
               {"boundary_hits", tally.near_boundary}};
    return violations + growth_missing == 0 ? kSuccess : kViolation;
}

int cmd_audit_geometry(const Common &c, int samples, Json &results) {
    const TauParam                         tau(c.tau_u, c.tau_v);
    const SpectralData                     spec = spectral_data(tau);
    std::mt19937_64                        rng(c.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr int                          kBoundary = 16;
    auto on_circle = [](const Diskd &d, int i) {
        return d.center + std::polar(d.radius, 2.0 * M_PI * i / kBoundary);
    };
    auto image_of = [&spec](ComplexPoint p) { return to_complex(spec.e_matrix * to_vector(p)); };

    std::int64_t inversion_bad = 0;
    std::int64_t roundtrip_bad = 0;
    double       worst_inv     = 0.0;
    for (int s = 0; s < samples; ++s) {
        const ComplexPoint x(6.0 * unit(rng) - 3.0, 6.0 * unit(rng) - 3.0);
        const Diskd        d{x, std::abs(x) * (0.01 + 0.98 * unit(rng))};
        const Diskd        img = invert_disk(d);
        for (int i = 0; i < kBoundary; ++i) {
            const double rel = std::abs(std::abs(1.0 / on_circle(d, i) - img.center) - img.radius) / img.radius;
            worst_inv        = std::max(worst_inv, rel);
            inversion_bad += rel > 1e-10 ? 1 : 0;
        }
        const Diskd back = invert_disk(img);
        roundtrip_bad += std::abs(back.center - d.center) > 1e-9 * std::abs(d.center) ||
                                 std::abs(back.radius - d.radius) > 1e-9 * d.radius
                             ? 1
                             : 0;
    }

    std::int64_t preimage_bad = 0;
    std::int64_t lens_bad     = 0;
    for (int s = 0; s < samples; ++s) {
        const ComplexPoint xt(10.0 * unit(rng) - 5.0, 10.0 * unit(rng) - 5.0);
        const double       rt    = 0.01 + 5.0 * unit(rng);
        const Diskd        probe = preimage_probe_ball(tau, xt, rt);
        for (int i = 0; i < kBoundary; ++i) {
            preimage_bad += std::abs(image_of(on_circle(probe, i)) - xt) > rt + 1e-12 * std::max(1.0, rt) ? 1 : 0;
        }

        const ComplexPoint w     = std::polar(1.0 + 49.0 * unit(rng), 2.0 * M_PI * unit(rng));
        const double       rbar  = std::abs(w) * (0.05 + 0.9 * unit(rng));
        const double       m     = 2.0 + 8.0 * unit(rng);
        const Diskd        lens  = case1_probe_ball(tau, w, rbar, m);
        const double       slack = 1e-12 * std::max(1.0, std::abs(w));
        for (int i = 0; i < kBoundary; ++i) {
            const ComplexPoint p = image_of(on_circle(lens, i));
            lens_bad += std::abs(p) > std::abs(w) + slack || std::abs(p - w) > rbar + slack ? 1 : 0;
        }
    }
    results = {{"samples", samples},
               {"inversion", {{"violations", inversion_bad}, {"worst_relative_error", worst_inv}}},
               {"involution", {{"violations", roundtrip_bad}}},
               {"preimage_probe", {{"violations", preimage_bad}}},
               {"case1_probe", {{"violations", lens_bad}}}};
    return inversion_bad + roundtrip_bad + preimage_bad + lens_bad == 0 ? kSuccess : kViolation;
}

int cmd_audit_cifs(const Common &c, std::size_t max_samples, Json &results) {
    const TauParam tau(c.tau_u, c.tau_v);
    const IndexSet set     = smallest_indices(tau, c.truncation);
    const auto     overlap = osc_audit(set);
    double         sup     = 0.0;
    for (const LatticeIndex idx : set.indices) {
        sup = std::max(sup, derivative_range(generator(tau, idx)).max);
    }
    const DistortionReport dist = distortion_audit(SystemConfig{tau, set.bound, c.depth}, c.depth, max_samples, c.seed);
    Json                   worst = Json::array();
    for (const LatticeIndex idx : dist.worst_word) {
        worst.push_back(index_json(idx));
    }
    Json pairs = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(overlap.size(), 20); ++i) {
        pairs.push_back({index_json(overlap[i].first), index_json(overlap[i].second)});
    }
    results = {{"indices", set.size()},
               {"truncation_bound", set.bound},
               {"osc", {{"violations", overlap.size()}, {"examples", pairs}}},
               {"contraction", {{"max_sup_derivative", sup}, {"below_one", sup < 1.0}}},
               {"distortion", {{"k_hat", dist.k_hat}, {"samples", dist.samples}, {"worst_word", worst}}}};
    return overlap.empty() && sup < 1.0 ? kSuccess : kViolation;
}

struct ScanOptions {
    int                   level   = 2;
    int                   r_per_b = 16;
    std::size_t           small   = 32;
    std::size_t           random  = 32;
    std::optional<double> h;
    std::string           csv;
    double                r_max = 500.0;
};

int cmd_measure_scan(const Common &c, const ScanOptions &o, Json &results) {
    const TauParam        tau(c.tau_u, c.tau_v);
    const Inputs          in      = fit_inputs(tau, c, o.h, o.r_max);
    const CylinderMeasure measure = build_measure(in.set, in.dim.h, o.level, cli_cap(in.set.size()));
    const auto            sample  = default_b_sample(in.set, o.small, o.random, c.seed);
    const ClaimStarScan   scan    = claim_star_scan(measure, in.constants, sample, o.r_per_b);

    std::int64_t nonpositive = 0;
    std::int64_t below       = 0;
    Json         cases       = Json::array();
    for (const CaseReport &r : scan.cases) {
        below += r.below_floor;
        cases.push_back({{"case", r.case_id},
                         {"scanned", r.scanned},
                         {"min_ratio", r.scanned > 0 ? Json(r.min_ratio) : Json(nullptr)},
                         {"witness_b", index_json(r.witness_b)},
                         {"witness_r", r.witness_r},
                         {"below_floor", r.below_floor}});
    }
    std::ostringstream csv;
    csv << "b_m,b_n,r,case,lower,ratio\n" << std::setprecision(17);
    for (const ScanRecord &rec : scan.records) {
        nonpositive += rec.ratio > 0.0 ? 0 : 1;
        csv << rec.b.m << ',' << rec.b.n << ',' << rec.r << ',' << rec.case_id << ',' << rec.lower << ','
            << rec.ratio << '\n';
    }
    if (!o.csv.empty()) {
        std::ofstream file(o.csv, std::ios::binary);
        if (!file || !(file << csv.str()) || !file.flush()) {
            throw std::runtime_error("cannot write " + o.csv);
        }
    }
    Json skipped = Json::array();
    for (const LatticeIndex b : scan.skipped) {
        skipped.push_back(index_json(b));
    }
    results = {{"h_used", scan.h},
               {"level", o.level},
               {"indices", in.set.size()},
               {"truncation_bound", in.set.bound},
               {"constants", constants_json(in.constants)},
               {"cases", cases},
               {"pairs", scan.records.size()},
               {"nonpositive", nonpositive},
               {"below_floor", below},
               {"skipped", skipped}};
    return nonpositive + below == 0 ? kSuccess : kViolation;
}

int cmd_constants(const Common &c, std::optional<double> h, double r_max, Json &results) {
    const TauParam tau(c.tau_u, c.tau_v);
    const Inputs   in = fit_inputs(tau, c, h, r_max);
    results           = {{"constants", constants_json(in.constants)},
                         {"inputs",
                          {{"k_source", "distortion_audit, word length 1"},
                           {"h_source", h ? "--exponent" : "bowen_root, word length 1"},
                           {"q_c_source", "fit_growth_constants on R = 1.." + std::to_string(static_cast<int>(r_max))},
                           {"indices", in.set.size()},
                           {"fit_residual", in.growth.fit_residual}}}};
    return kSuccess;
}

struct SweepOptions {
    double u_min = 0.0, u_max = 1.0;
    int    u_steps = 3;
    double v_min = 1.0, v_max = 2.0;
    int    v_steps = 3;
};

std::string cmd_sweep(const Common &c, const SweepOptions &o) {
    auto axis = [](double lo, double hi, int steps) {
        std::vector<double> v;
        for (int i = 0; i < steps; ++i) {
            v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
        }
        return v;
    };
    // Validate the whole grid up front so that a bad corner fails before any work.
    for (const double u : axis(o.u_min, o.u_max, o.u_steps)) {
        for (const double v : axis(o.v_min, o.v_max, o.v_steps)) {
            TauParam(u, v);
        }
    }
    std::ostringstream csv;
    csv << "tau_u,tau_v,indices,truncation_bound,word_length,h,residual,status\n" << std::setprecision(17);
    for (const double u : axis(o.u_min, o.u_max, o.u_steps)) {
        for (const double v : axis(o.v_min, o.v_max, o.v_steps)) {
            const TauParam tau(u, v);
            const IndexSet set = smallest_indices(tau, c.truncation);
            csv << u << ',' << v << ',' << set.size() << ',' << set.bound << ',' << c.depth << ',';
            try {
                const DimensionEstimate est = bowen_root(set, c.depth, c.tol, cli_cap(set.size()));
                csv << est.h << ',' << est.residual << ",ok\n";
            } catch (const BracketError &) {
                csv << "nan,nan,no_bracket\n";
            }
        }
    }
    return csv.str();
}

} // namespace

std::vector<std::uint8_t> render_pgm(const std::vector<ComplexPoint> &points, int width) {
    if (width < 64) {
        throw DomainError("render: width must be >= 64");
    }
    const std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(width) + "\n255\n";
    std::vector<std::uint8_t> image(header.begin(), header.end());
    const std::size_t         offset = image.size();
    image.resize(offset + static_cast<std::size_t>(width) * static_cast<std::size_t>(width), 255);
    constexpr double lo   = -0.05;
    constexpr double span = 1.1;
    for (const ComplexPoint p : points) {
        const double col = std::floor((p.real() - lo) / span * width);
        const double row = std::floor((lo + span - p.imag()) / span * width);
        if (col < 0.0 || row < 0.0 || col >= width || row >= width) {
            continue;
        }
        image[offset + static_cast<std::size_t>(row) * width + static_cast<std::size_t>(col)] = 0;
    }
    return image;
}

void write_render(const std::vector<ComplexPoint> &points, int width, const std::string &path) {
    const auto    image = render_pgm(points, width);
    std::ofstream file(path, std::ios::binary);
    if (!file || !file.write(reinterpret_cast<const char *>(image.data()), static_cast<std::streamsize>(image.size())) ||
        !file.flush()) {
        throw std::runtime_error("cannot write render to " + path);
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Numerical laboratory for generalized complex continued fraction systems"};
    app.require_subcommand(1);

    auto *dim = app.add_subcommand("dim", "Bowen-root dimension estimate on a truncation");
    Common dim_c;
    add_common(dim, dim_c);

    auto *render = app.add_subcommand("render", "Render phi_w(0) over all words of one length as a PGM image");
    Common render_c;
    int    width = 1024;
    add_common(render, render_c, 2);
    render->add_option("--width", width, "Image width in pixels (>= 64)")->capture_default_str();

    auto *lattice = app.add_subcommand("audit-lattice", "Quarter-disk bounds and annulus growth audit");
    Common lattice_c;
    int    r_max = 300;
    add_common(lattice, lattice_c);
    lattice->add_option("--r-max", r_max, "Largest audited radius")->capture_default_str();

    auto *geometry = app.add_subcommand("audit-geometry", "Inversion and disk inclusion audit on random disks");
    Common geometry_c;
    int    samples = 10000;
    add_common(geometry, geometry_c);
    geometry->add_option("--samples", samples, "Random cases per suite")->check(CLI::PositiveNumber)->capture_default_str();

    auto *cifs_cmd = app.add_subcommand("audit-cifs", "Open set condition, contraction and distortion audit");
    Common      cifs_c;
    std::size_t max_samples = 200000;
    add_common(cifs_cmd, cifs_c);
    cifs_cmd->add_option("--max-samples", max_samples, "Exhaustive below this many words, sampled above")
        ->capture_default_str();

    auto *scan = app.add_subcommand("measure-scan", "Ball-mass lower bound scan over the three radius cases");
    Common      scan_c;
    ScanOptions scan_o;
    double      scan_h = 0.0;
    add_common(scan, scan_c);
    scan_c.truncation = 2000;
    scan->add_option("--level", scan_o.level, "Measure level")->check(CLI::Range(1, kMaxWordLength))->capture_default_str();
    scan->add_option("--r-per-b", scan_o.r_per_b, "Radii per sampled b")->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--small", scan_o.small, "Smallest-modulus b in the sample")->capture_default_str();
    scan->add_option("--random", scan_o.random, "Random further b in the sample")->capture_default_str();
    auto *scan_h_opt = scan->add_option("--exponent", scan_h, "Exponent for the measure (default: Bowen root)");
    scan->add_option("--csv", scan_o.csv, "Per-pair CSV output path");

    auto *constants = app.add_subcommand("constants", "Packing constants from empirical K, Q, C and h");
    Common constants_c;
    double constants_h = 0.0;
    add_common(constants, constants_c);
    auto *constants_h_opt = constants->add_option("--exponent", constants_h, "Exponent (default: Bowen root)");

    auto *sweep = app.add_subcommand("sweep", "Grid of Bowen roots over A0 as CSV");
    Common       sweep_c;
    SweepOptions sweep_o;
    add_common(sweep, sweep_c);
    sweep->add_option("--u-min", sweep_o.u_min)->capture_default_str();
    sweep->add_option("--u-max", sweep_o.u_max)->capture_default_str();
    sweep->add_option("--u-steps", sweep_o.u_steps)->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--v-min", sweep_o.v_min)->capture_default_str();
    sweep->add_option("--v-max", sweep_o.v_max)->capture_default_str();
    sweep->add_option("--v-steps", sweep_o.v_steps)->check(CLI::PositiveNumber)->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kSuccess;
        }
        err << "usage error: " << e.what() << "\n";
        return kError;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        CLI::App *sub = app.get_subcommands().front();
        Json      results;
        int       code   = kSuccess;
        Common   *active = nullptr;
        Json      extra  = Json::object();
        if (sub == dim) {
            active = &dim_c;
            code   = cmd_dim(dim_c, results);
        } else if (sub == render) {
            active          = &render_c;
            extra["width"]  = width;
            code            = cmd_render(render_c, width, results);
        } else if (sub == lattice) {
            active          = &lattice_c;
            extra["r_max"]  = r_max;
            code            = cmd_audit_lattice(lattice_c, r_max, results);
        } else if (sub == geometry) {
            active           = &geometry_c;
            extra["samples"] = samples;
            code             = cmd_audit_geometry(geometry_c, samples, results);
        } else if (sub == cifs_cmd) {
            active               = &cifs_c;
            extra["max_samples"] = max_samples;
            code                 = cmd_audit_cifs(cifs_c, max_samples, results);
        } else if (sub == scan) {
            active = &scan_c;
            if (*scan_h_opt) {
                scan_o.h = scan_h;
            }
            extra = {{"level", scan_o.level}, {"r_per_b", scan_o.r_per_b}, {"small", scan_o.small},
                     {"random", scan_o.random}, {"h", scan_o.h ? Json(*scan_o.h) : Json(nullptr)},
                     {"csv", scan_o.csv}};
            code  = cmd_measure_scan(scan_c, scan_o, results);
        } else if (sub == constants) {
            active = &constants_c;
            std::optional<double> h;
            if (*constants_h_opt) {
                h = constants_h;
            }
            extra["h"] = h ? Json(*h) : Json(nullptr);
            code       = cmd_constants(constants_c, h, 500.0, results);
        } else {
            write_text(sweep_c.out, cmd_sweep(sweep_c, sweep_o), out);
            return kSuccess;
        }

        Json config = active->echo();
        config.update(extra);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const Json   report  = {{"command", sub->get_name()},
                                {"config", config},
                                {"results", results},
                                {"seed", active->seed},
                                {"wall_time_s", active->no_wall_time ? 0.0 : elapsed}};
        // The PGM goes to --out, so the render report always goes to the console.
        write_text(sub == render ? "-" : active->out, report.dump(2) + "\n", out);
        if (code == kViolation) {
            err << sub->get_name() << ": audit violations found\n";
        }
        return code;
    } catch (const DomainError &e) {
        err << "usage error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

} // namespace cifs::cli
