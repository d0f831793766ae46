// latslice: lattice slicing experiments from the command line.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "latslice/gaussian.hpp"
#include "latslice/io.hpp"
#include "latslice/slicing.hpp"
#include "latslice/suite.hpp"

using namespace latslice;
using nlohmann::json;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config error", "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error("config error", std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

Vec parse_vec(const std::string& csv) {
    std::vector<double> xs;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) xs.push_back(std::stod(tok));
    Vec v(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
    return v;
}

// Inline forms: box:h1,h2,... | cross:s1,s2,... | ball:d:r | otherwise a
// JSON file path.
Body parse_body(const std::string& spec) {
    if (spec.rfind("box:", 0) == 0) return Body::box(parse_vec(spec.substr(4)));
    if (spec.rfind("cross:", 0) == 0) return Body::cross_polytope(parse_vec(spec.substr(6)));
    if (spec.rfind("ball:", 0) == 0) {
        auto rest = spec.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw Error("config error", "ball spec is ball:<dim>:<radius>");
        return Body::ball(std::stoi(rest.substr(0, colon)), std::stod(rest.substr(colon + 1)));
    }
    return body_from_json(load_json_file(spec));
}

Lattice parse_lattice(const std::string& spec, int dim) {
    if (spec == "integer") {
        if (dim < 1) throw Error("config error", "--dim required for the integer lattice");
        return Lattice::integer(dim);
    }
    return lattice_from_json(load_json_file(spec));
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("config error", "cannot write: " + out_path);
    out << content;
}

int thread_cap() {
    const char* env = std::getenv("LATSLICE_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

struct Options {
    std::string body_spec;
    std::string lattice_spec = "integer";
    int dim = 0;
    std::int64_t seed = -1;
    double s = 0;
    std::size_t n = 1000;
    std::string sampler = "exact";
    double norm_bound = 1.0;
    FinderConfig cfg;
    std::string out_path;
    std::string format = "json";

    Rng require_rng() const {
        if (seed < 0) throw Error("config error", "--seed required for randomized commands");
        return Rng(static_cast<std::uint64_t>(seed));
    }
    Lattice lattice(int body_dim = 0) const {
        return parse_lattice(lattice_spec, dim > 0 ? dim : body_dim);
    }
};

int cmd_enumerate(const Options& o) {
    Body body = parse_body(o.body_spec);
    PointSet ps = enumerate_in_body(o.lattice(body.dim()), body);
    write_output(o.out_path, std::string("# latslice ") + kVersion + "\n" + point_set_csv(ps));
    return 0;
}

int cmd_theta(const Options& o) {
    Lattice lat = o.lattice();
    GaussianParam s(o.s);
    ThetaResult t = theta(lat, s);
    json j{{"version", kVersion},
           {"s", o.s},
           {"value", t.value},
           {"truncation_radius", t.truncation_radius},
           {"terms_used", t.terms_used},
           {"tail_bound", t.tail_bound},
           {"prob_zero", 1.0 / t.value},
           {"poisson_residual", poisson_check(lat, s)}};
    write_output(o.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_sample(const Options& o) {
    Lattice lat = o.lattice();
    Rng rng = o.require_rng();
    GaussianParam s(o.s);
    std::ostringstream out;
    out << "# latslice " << kVersion << "\n";
    for (int i = 0; i < lat.dim(); ++i) out << "c" << i << (i + 1 < lat.dim() ? "," : "\n");
    std::size_t zeros = 0;
    auto emit = [&](const IntVec& c) {
        if (c.isZero()) ++zeros;
        for (Eigen::Index i = 0; i < c.size(); ++i)
            out << c[i] << (i + 1 < c.size() ? "," : "\n");
    };
    if (o.sampler == "exact") {
        ExactSampler sampler(lat, s);
        for (std::size_t i = 0; i < o.n; ++i) emit(sampler.sample_coeffs(rng));
    } else if (o.sampler == "klein") {
        KleinSampler sampler(lat, s);
        for (std::size_t i = 0; i < o.n; ++i) emit(sampler.sample_coeffs(rng));
    } else {
        throw Error("config error", "--sampler must be exact or klein");
    }
    double freq = static_cast<double>(zeros) / static_cast<double>(o.n);
    out << "# zero_frequency=" << format_double(freq) << "\n";
    out << "# prob_zero=" << format_double(prob_zero(lat, s)) << "\n";
    write_output(o.out_path, out.str());
    return 0;
}

int cmd_slice_random(const Options& o) {
    Body body = parse_body(o.body_spec);
    Lattice lat = o.lattice(body.dim());
    Rng rng = o.require_rng();
    PointSet ps = enumerate_in_body(lat, body);
    SliceResult r = randomized_finder(lat, body, ps, o.cfg, rng);
    write_output(o.out_path, slice_result_to_json(r).dump(2) + "\n");
    return 0;
}

int cmd_slice_best(const Options& o, const std::string& mode) {
    Body body = parse_body(o.body_spec);
    Lattice lat = o.lattice(body.dim());
    PointSet ps = enumerate_in_body(lat, body);
    SliceResult r = mode == "dual" ? best_slice_dual_search(lat, ps, o.norm_bound)
                                   : best_slice_exact(lat, ps);
    write_output(o.out_path, slice_result_to_json(r).dump(2) + "\n");
    return 0;
}

int cmd_verify(const Options& o) {
    Body body = parse_body(o.body_spec);
    Lattice lat = o.lattice(body.dim());
    Rng rng = o.require_rng();
    BoundReport rep = verify_bound(lat, body, o.cfg, rng, o.body_spec);
    if (o.format == "csv") {
        write_output(o.out_path, std::string("# latslice ") + kVersion + "\n" +
                                     bound_report_csv_header() + "\n" +
                                     bound_report_csv_row(rep) + "\n");
    } else {
        write_output(o.out_path, bound_report_to_json(rep).dump(2) + "\n");
    }
    return 0;
}

int cmd_suite(const Options& o) {
    if (o.seed < 0) throw Error("config error", "--seed required for randomized commands");
    auto entries = standard_suite();
    Rng base(static_cast<std::uint64_t>(o.seed));
    std::vector<std::string> rows(entries.size());
    auto run_one = [&](std::size_t i) {
        Rng rng = base.child(i);
        Lattice lat = Lattice::integer(entries[i].body.dim());
        BoundReport rep = verify_bound(lat, entries[i].body, o.cfg, rng, entries[i].id);
        rows[i] = bound_report_csv_row(rep);
    };
    const int threads = thread_cap();
    if (threads <= 1) {
        for (std::size_t i = 0; i < entries.size(); ++i) run_one(i);
    } else {
        std::vector<std::future<void>> futs;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (static_cast<int>(futs.size()) >= threads) {
                futs.front().get();
                futs.erase(futs.begin());
            }
            futs.push_back(std::async(std::launch::async, run_one, i));
        }
        for (auto& f : futs) f.get();
    }
    std::ostringstream out;
    out << "# latslice " << kVersion << " seed=" << o.seed << "\n"
        << bound_report_csv_header() << "\n";
    for (const std::string& r : rows) out << r << "\n";
    write_output(o.out_path, out.str());
    return 0;
}

int cmd_calibrate(const Options& o) {
    if (o.seed < 0) throw Error("config error", "--seed required for randomized commands");
    Rng base(static_cast<std::uint64_t>(o.seed));
    std::vector<SuiteEntry> entries;
    for (auto& e : standard_suite())
        if (!e.expect_degenerate && e.body.dim() <= 4) entries.push_back(e);

    auto all_succeed = [&](double big_C, double small_c) {
        FinderConfig cfg = o.cfg;
        cfg.big_C = big_C;
        cfg.small_c = small_c;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            try {
                Rng rng = base.child(i);
                Lattice lat = Lattice::integer(entries[i].body.dim());
                Body working = entries[i].body;
                Lattice working_lat = lat;
                try {
                    JohnResult jr = john_normalize(working, rng);
                    working_lat = Lattice(lat.basis() * jr.transform.transpose());
                    working = jr.transformed_body;
                } catch (const Error& e2) {
                    if (e2.code() != "john unsupported") throw;
                }
                PointSet ps = enumerate_in_body(working_lat, working);
                randomized_finder(working_lat, working, ps, cfg, rng);
            } catch (const Error&) {
                return false;
            }
        }
        return true;
    };

    double largest_small_c = 0;
    for (double c : {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1}) {
        if (all_succeed(o.cfg.big_C, c)) {
            largest_small_c = c;
            break;
        }
    }
    double smallest_big_C = 0;
    for (double C : {1.0, 1.25, 1.5, 2.0, 3.0, 4.0}) {
        if (all_succeed(C, o.cfg.small_c)) {
            smallest_big_C = C;
            break;
        }
    }
    json j{{"version", kVersion},
           {"instances", entries.size()},
           {"reference_big_C", o.cfg.big_C},
           {"reference_small_c", o.cfg.small_c},
           {"largest_admissible_small_c", largest_small_c},
           {"smallest_admissible_big_C", smallest_big_C}};
    write_output(o.out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice slicing toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--lattice", o.lattice_spec, "lattice JSON file or 'integer'");
        sub->add_option("--dim", o.dim, "dimension for the integer lattice");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--out", o.out_path, "output file (default stdout)");
        sub->add_option("--format", o.format, "csv|json");
        sub->add_option("--big-C", o.cfg.big_C, "Gaussian width multiplier");
        sub->add_option("--small-c", o.cfg.small_c, "acceptance threshold constant");
        sub->add_option("--max-attempts", o.cfg.max_attempts, "finder attempt budget");
    };
    auto add_body = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("--body", o.body_spec,
                                    "body JSON file or box:..|cross:..|ball:d:r");
        if (required) opt->required();
    };

    auto* c_enum = app.add_subcommand("enumerate", "list lattice points inside a body");
    add_common(c_enum);
    add_body(c_enum);

    auto* c_theta = app.add_subcommand("theta", "lattice Gaussian mass and Poisson residual");
    add_common(c_theta);
    c_theta->add_option("--s", o.s, "gaussian width")->required();

    auto* c_sample = app.add_subcommand("sample", "draw discrete Gaussian samples");
    add_common(c_sample);
    c_sample->add_option("--s", o.s, "gaussian width")->required();
    c_sample->add_option("--n", o.n, "number of samples");
    c_sample->add_option("--sampler", o.sampler, "exact|klein");

    auto* c_rand = app.add_subcommand("slice-random", "randomized hyperplane finder");
    add_common(c_rand);
    add_body(c_rand);

    auto* c_best = app.add_subcommand("slice-best", "best slice oracle");
    add_common(c_best);
    add_body(c_best);
    std::string mode = "exact";
    c_best->add_option("mode", mode, "exact|dual");
    c_best->add_option("--norm-bound", o.norm_bound, "dual vector norm bound");

    auto* c_verify = app.add_subcommand("verify", "full bound verification for one body");
    add_common(c_verify);
    add_body(c_verify);

    auto* c_suite = app.add_subcommand("suite", "run the standard body suite");
    add_common(c_suite);

    auto* c_cal = app.add_subcommand("calibrate", "measure admissible constants");
    add_common(c_cal);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_enum->parsed()) return cmd_enumerate(o);
        if (c_theta->parsed()) return cmd_theta(o);
        if (c_sample->parsed()) return cmd_sample(o);
        if (c_rand->parsed()) return cmd_slice_random(o);
        if (c_best->parsed()) return cmd_slice_best(o, mode);
        if (c_verify->parsed()) return cmd_verify(o);
        if (c_suite->parsed()) return cmd_suite(o);
        if (c_cal->parsed()) return cmd_calibrate(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "config error" || e.code() == "invalid config" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
