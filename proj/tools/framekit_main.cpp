// framekit command line: drives the library in batch over JSON matrix files.
// Every command prints one JSON report to stdout (or --out) with an embedded
// manifest; identical invocations produce byte-identical reports.

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "framekit/framekit.hpp"

namespace {

using framekit::BoundsResult;
using framekit::Index;
using framekit::Matrix;
using framekit::Vector;
using framekit::VectorFamily;
namespace io = framekit::io;

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_parse = 2,
    exit_not_a_frame = 3,
    exit_no_representation = 4,
    exit_criterion_failed = 5,
};

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("FRAMEKIT_LOG");
        if (!env) return 0;
        const std::string v(env);
        if (v == "debug") return 2;
        if (v == "info") return 1;
        return 0;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[framekit] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[framekit:debug] " << msg << "\n";
}

struct Options {
    std::string out;
    double tolerance = framekit::tol::predicate;
    long n_max = 512;
    double tail_tol = 1e-10;
    unsigned long long seed = 0;
    long index = 1;
    long truncation = 0;
    std::vector<long> ks{1, 2, 4};
    std::string dump_orbit;
    std::string file1, file2, file3;  // positional inputs in order
    std::string seeds_file;           // vset --seeds

    std::vector<std::string> inputs() const {
        std::vector<std::string> list;
        for (const std::string* f : {&file1, &file2, &file3, &seeds_file})
            if (!f->empty()) list.push_back(*f);
        return list;
    }
};

io::Json manifest(const std::string& command, const Options& opt) {
    io::JsonObject m;
    m["command"] = command;
    io::JsonArray inputs;
    for (const auto& path : opt.inputs()) inputs.push_back(path);
    m["inputs"] = std::move(inputs);
    io::JsonObject tolerances;
    tolerances["tol"] = opt.tolerance;
    tolerances["tail_tol"] = opt.tail_tol;
    m["tolerances"] = std::move(tolerances);
    io::JsonObject truncation;
    truncation["n_max"] = opt.n_max;
    if (opt.truncation > 0) truncation["n"] = opt.truncation;
    m["truncation"] = std::move(truncation);
    m["seed"] = opt.seed;
    if (command == "remove") m["index"] = opt.index;
    if (command == "vset") {
        io::JsonArray ks;
        for (long k : opt.ks) ks.push_back(k);
        m["ks"] = std::move(ks);
    }
    return m;
}

void emit(const io::Json& report, const Options& opt) {
    if (opt.out.empty()) {
        std::cout << io::dump(report) << "\n";
    } else {
        io::write_file(opt.out, report);
        log_info("report written to " + opt.out);
    }
}

void put_bounds(io::JsonObject& obj, const BoundsResult& b) {
    if (framekit::is_frame(b)) {
        obj["A"] = framekit::bounds(b).lower;
        obj["B"] = framekit::bounds(b).upper;
    } else {
        obj["not_a_frame"] = true;
        obj["lambda_min"] = framekit::lambda_min_witness(b);
    }
}

int cmd_analyze(const Options& opt) {
    const VectorFamily family(io::load_matrix(opt.file1));
    const BoundsResult result = framekit::frame_bounds(family);

    io::JsonObject report;
    report["dim"] = family.dim();
    report["count"] = family.count();
    report["manifest"] = manifest("analyze", opt);
    if (!framekit::is_frame(result)) {
        report["not_a_frame"] = true;
        report["lambda_min"] = framekit::lambda_min_witness(result);
        emit(io::Json(std::move(report)), opt);
        return exit_not_a_frame;
    }

    const framekit::FrameBounds b = framekit::bounds(result);
    report["A"] = b.lower;
    report["B"] = b.upper;
    report["tight"] = framekit::is_tight(family, opt.tolerance);
    report["parseval"] = framekit::is_parseval(family, opt.tolerance);
    report["riesz_basis"] = framekit::is_riesz_basis(family);
    const framekit::BoundsWitness witness = framekit::frame_bounds_witness(family);
    report["witness_lower"] = io::vector_to_json(witness.lower);
    report["witness_upper"] = io::vector_to_json(witness.upper);
    report["canonical_dual"] = io::matrix_to_json(framekit::canonical_dual(family).columns());
    report["parseval_transform"] =
        io::matrix_to_json(framekit::parseval_transform(family).columns());
    emit(io::Json(std::move(report)), opt);
    return exit_ok;
}

int cmd_represent(const Options& opt) {
    const VectorFamily family(io::load_matrix(opt.file1));
    const framekit::RepresentationReport rep = framekit::build_representation(family, opt.tolerance);

    io::JsonObject report;
    report["max_residual"] = rep.max_residual;
    report["linearly_independent"] = rep.linearly_independent;
    report["kernel_shift_invariant"] = rep.kernel_shift_invariant;
    report["no_exact_representation"] = !rep.op.has_value();
    report["operator"] = rep.op ? io::matrix_to_json(*rep.op) : io::Json(nullptr);
    report["manifest"] = manifest("represent", opt);
    emit(io::Json(std::move(report)), opt);
    return rep.op ? exit_ok : exit_no_representation;
}

int cmd_orbit(const Options& opt) {
    framekit::OrbitConfig config;
    config.transition = io::load_matrix(opt.file1);
    config.seed = io::load_vector(opt.file2);
    config.max_length = std::max<Index>(opt.n_max, config.transition.rows());
    config.tail_tol = opt.tail_tol;

    const framekit::OrbitReport orbit = framekit::orbit_frame_report(config);
    io::JsonObject report;
    report["truncation_used"] = orbit.truncation_used;
    report["hit_max_length"] = orbit.hit_max_length;
    report["tail_bound"] =
        std::isfinite(orbit.tail_bound) ? io::Json(orbit.tail_bound) : io::Json(nullptr);
    report["decay_ratio"] =
        std::isfinite(orbit.decay_ratio) ? io::Json(orbit.decay_ratio) : io::Json(nullptr);
    put_bounds(report, orbit.bounds_estimate);
    report["in_V"] = orbit.in_v;
    report["verdict"] = framekit::to_string(orbit.verdict);
    if (!orbit.reason.empty()) report["reason"] = orbit.reason;
    report["manifest"] = manifest("orbit", opt);

    if (!opt.dump_orbit.empty()) {
        const framekit::OrbitResult family = framekit::orbit(config);
        io::write_file(opt.dump_orbit, io::matrix_to_json(family.family.columns()));
        log_info("orbit family written to " + opt.dump_orbit);
    }
    emit(io::Json(std::move(report)), opt);
    return exit_ok;
}

int cmd_remove(const Options& opt) {
    const VectorFamily family(io::load_matrix(opt.file1));
    const framekit::RemovalReport removal =
        framekit::removal_test(family, opt.index, opt.tolerance);

    io::JsonObject report;
    report["index"] = removal.index;
    report["criterion_value"] = removal.criterion_value;
    report["threshold"] = removal.threshold;
    report["removable"] = removal.removable;
    report["certified_lower_bound"] = removal.certified_lower_bound;
    io::JsonObject post;
    put_bounds(post, removal.post_removal_bounds);
    report["post_removal"] = std::move(post);
    report["manifest"] = manifest("remove", opt);
    emit(io::Json(std::move(report)), opt);
    return removal.removable ? exit_ok : exit_criterion_failed;
}

int cmd_perturb(const Options& opt) {
    const Matrix t = io::load_matrix(opt.file1);
    const Vector base = io::load_vector(opt.file2);
    const Vector perturbed = io::load_vector(opt.file3);
    const auto n = static_cast<unsigned long>(opt.truncation);

    const framekit::StabilityReport stab = framekit::stability_test(t, base, perturbed, n);
    io::JsonObject report;
    report["lower_bound_A"] = stab.lower_bound_a;
    report["k_inverse"] = stab.k_inverse;
    report["equivalent_k"] =
        std::isfinite(stab.equivalent_k) ? io::Json(stab.equivalent_k) : io::Json(nullptr);
    report["mu"] = stab.mu;
    report["sufficient"] = stab.sufficient;
    report["certified_lower_bound"] = stab.certified_lower_bound;
    io::JsonObject oracle;
    put_bounds(oracle, stab.oracle_bounds);
    report["oracle"] = std::move(oracle);
    report["bessel_difference_bound"] = framekit::bessel_difference_bound(
        framekit::detail::orbit_prefix(t, base, n), framekit::detail::orbit_prefix(t, perturbed, n));
    report["manifest"] = manifest("perturb", opt);
    emit(io::Json(std::move(report)), opt);
    return exit_ok;
}

int cmd_spectral(const Options& opt) {
    const Matrix t = io::load_matrix(opt.file1);
    framekit::require_square(t);

    io::JsonObject report;
    report["norm"] = framekit::operator_norm(t);
    report["spectral_radius"] = framekit::spectral_radius(t);
    const framekit::InverseResult inv = framekit::try_inverse(t);
    report["invertible"] = framekit::is_invertible(inv);
    if (framekit::is_invertible(inv)) {
        report["neighborhood_radius"] = 1.0 / framekit::operator_norm(framekit::inverse(inv));
    } else {
        report["sigma_min"] = std::get<framekit::NotInvertible>(inv).sigma_min;
    }
    report["manifest"] = manifest("spectral", opt);
    emit(io::Json(std::move(report)), opt);
    return exit_ok;
}

int cmd_vset(const Options& opt) {
    const Matrix t = io::load_matrix(opt.file1);
    const Matrix seed_columns = io::load_matrix(opt.seeds_file);
    if (seed_columns.rows() != t.rows())
        throw framekit::DimensionMismatchError("seed columns must match the operator dimension");
    std::vector<Vector> seeds;
    for (Index c = 0; c < seed_columns.cols(); ++c) seeds.push_back(seed_columns.col(c));
    log_debug("loaded " + std::to_string(seeds.size()) + " seeds");

    const framekit::VsetExperiment exp =
        framekit::vset_ball_experiment(t, seeds, opt.ks, opt.n_max, opt.tail_tol);

    io::JsonObject report;
    io::JsonArray seed_reports;
    for (const framekit::OrbitReport& r : exp.seed_reports) {
        io::JsonObject s;
        s["in_V"] = r.in_v;
        s["verdict"] = framekit::to_string(r.verdict);
        if (!r.reason.empty()) s["reason"] = r.reason;
        put_bounds(s, r.bounds_estimate);
        seed_reports.push_back(std::move(s));
    }
    report["seeds"] = std::move(seed_reports);
    io::JsonArray in_v;
    for (Index i : exp.in_v_seeds) in_v.push_back(i);
    report["in_V_indices"] = std::move(in_v);

    const auto check_to_json = [](const framekit::VsetCheck& c) {
        io::JsonObject o;
        o["phi_index"] = c.phi_index;
        o["f_index"] = c.f_index;
        o["k"] = c.k;
        o["member"] = c.membership.member;
        o["witness_n"] =
            c.membership.member ? io::Json(c.membership.witness_n) : io::Json(nullptr);
        o["best_distance"] = c.membership.best_distance;
        o["best_n"] = c.membership.best_n;
        return io::Json(std::move(o));
    };
    io::JsonArray checks;
    for (const auto& c : exp.checks) checks.push_back(check_to_json(c));
    report["checks"] = std::move(checks);
    io::JsonArray violations;
    for (const auto& c : exp.violations) violations.push_back(check_to_json(c));
    report["violations"] = std::move(violations);
    report["forward_inclusion_holds"] = exp.violations.empty();
    report["manifest"] = manifest("vset", opt);
    emit(io::Json(std::move(report)), opt);
    return exit_ok;
}

int run_guarded(const std::function<int()>& command, const Options& opt) {
    try {
        return command();
    } catch (const framekit::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const framekit::NotAFrameError& e) {
        io::JsonObject report;
        report["error"] = e.what();
        report["lambda_min"] = e.lambda_min;
        report["not_a_frame"] = true;
        emit(io::Json(std::move(report)), opt);
        return exit_not_a_frame;
    } catch (const framekit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"framekit: finite-dimensional frame and operator-orbit toolkit"};
    app.require_subcommand(1);

    Options opt;
    std::function<int()> command;

    const auto add_common = [&](CLI::App* sub, const std::string& name) {
        sub->add_option("--out", opt.out, "write the report here instead of stdout");
        sub->add_option("--seed", opt.seed, "random seed recorded in the manifest");
        sub->callback([&, name] { log_info("running " + name); });
    };

    CLI::App* analyze = app.add_subcommand("analyze", "frame bounds, flags, dual and Parseval transform");
    analyze->add_option("frame_file", opt.file1, "family file (columns are the vectors)")
        ->required();
    analyze->add_option("--tol", opt.tolerance, "predicate tolerance");
    add_common(analyze, "analyze");
    analyze->final_callback([&] { command = [&] { return cmd_analyze(opt); }; });

    CLI::App* represent = app.add_subcommand("represent", "fit T with f_{k+1} = T f_k");
    represent->add_option("frame_file", opt.file1, "family file")->required();
    represent->add_option("--tol", opt.tolerance, "max residual accepted for an exact representation");
    add_common(represent, "represent");
    represent->final_callback([&] { command = [&] { return cmd_represent(opt); }; });

    CLI::App* orbit = app.add_subcommand("orbit", "orbit frame verdict for a seed under T");
    orbit->add_option("operator_file", opt.file1, "operator matrix file")->required();
    orbit->add_option("seed_file", opt.file2, "seed vector file")->required();
    orbit->add_option("--n-max", opt.n_max, "orbit truncation cap");
    orbit->add_option("--tail-tol", opt.tail_tol, "tail energy tolerance");
    orbit->add_option("--dump-orbit", opt.dump_orbit, "also write the orbit family as a matrix file");
    add_common(orbit, "orbit");
    orbit->final_callback([&] { command = [&] { return cmd_orbit(opt); }; });

    CLI::App* remove = app.add_subcommand("remove", "one-element removal criterion");
    remove->add_option("frame_file", opt.file1, "family file")->required();
    remove->add_option("--index", opt.index, "1-based index of the vector to remove")->required();
    remove->add_option("--tol", opt.tolerance, "criterion tolerance");
    add_common(remove, "remove");
    remove->final_callback([&] { command = [&] { return cmd_remove(opt); }; });

    CLI::App* perturb = app.add_subcommand("perturb", "seed perturbation stability test");
    perturb->add_option("operator_file", opt.file1, "operator matrix file")->required();
    perturb->add_option("base_seed_file", opt.file2, "base seed vector file")->required();
    perturb->add_option("perturbed_seed_file", opt.file3, "perturbed seed vector file")->required();
    perturb->add_option("--n", opt.truncation, "orbit truncation (n+1 vectors)")->required();
    add_common(perturb, "perturb");
    perturb->final_callback([&] { command = [&] { return cmd_perturb(opt); }; });

    CLI::App* spectral = app.add_subcommand("spectral", "norm, spectral radius and invertibility neighborhood");
    spectral->add_option("operator_file", opt.file1, "operator matrix file")->required();
    add_common(spectral, "spectral");
    spectral->final_callback([&] { command = [&] { return cmd_spectral(opt); }; });

    CLI::App* vset = app.add_subcommand("vset", "V(T) ball forward-inclusion experiment");
    vset->add_option("operator_file", opt.file1, "operator matrix file")->required();
    vset->add_option("--seeds", opt.seeds_file, "matrix file whose columns are the seeds")
        ->required();
    vset->add_option("--ks", opt.ks, "ball radii 1/k to check")->delimiter(',');
    vset->add_option("--n-max", opt.n_max, "orbit truncation and search cap");
    vset->add_option("--tail-tol", opt.tail_tol, "tail energy tolerance");
    add_common(vset, "vset");
    vset->final_callback([&] { command = [&] { return cmd_vset(opt); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse;
    }

    return run_guarded(command, opt);
}
