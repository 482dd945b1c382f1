// tbtd: generate, build and verify TB tridiagonal systems and Leonard triples.
//
// Exit status: 0 success, 1 a mathematical check failed, 2 bad input or config.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tbtd/json_io.hpp"
#include "tbtd/suites.hpp"

using namespace tbtd;

namespace {

struct Config {
    std::string family, field = "Q", h = "1", h_star, q, beta;
    std::size_t d = 0;
    std::string input, output, report, format = "json";
};

struct Failure {
    int code;
    std::string message;
};

std::size_t max_d() {
    const char* env = std::getenv("TB_TRIDIAG_MAX_D");
    if (!env || !*env) return 64;
    try {
        return std::stoul(env);
    } catch (const std::exception&) {
        throw Failure{2, std::string("TB_TRIDIAG_MAX_D is not a number: ") + env};
    }
}

void check_d(std::size_t d) {
    if (d > max_d()) throw Failure{2, "d = " + std::to_string(d) + " exceeds TB_TRIDIAG_MAX_D = " + std::to_string(max_d())};
}

Json read_input(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw Failure{2, "cannot open " + path};
        ss << in.rdbuf();
    }
    try {
        return Json::parse(ss.str());
    } catch (const Json::exception& e) {
        throw Failure{2, "ParseError: " + std::string(e.what())};
    }
}

void write_output(const Config& cfg, const std::string& text) {
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw Failure{2, "cannot write " + cfg.output};
    out << text;
}

FamilyTag tag_from_flags(const Config& cfg, const Field& f) {
    FamilyTag t;
    if (cfg.family == "q-racah")
        t.kind = cfg.d % 2 ? FamilyKind::QRacahOdd : FamilyKind::QRacahEven;
    else
        t.kind = parse_family(cfg.family);
    t.h = f.parse_element(cfg.h);
    t.h_star = cfg.h_star.empty() ? t.h : f.parse_element(cfg.h_star);
    if (!cfg.q.empty()) t.q = f.parse_element(cfg.q);
    if (!cfg.beta.empty() && !t.q) t.beta = f.parse_element(cfg.beta);
    return t;
}

/// The input document, or one generated from the family flags.
Json source(const Config& cfg) {
    if (!cfg.input.empty()) {
        Json j = read_input(cfg.input);
        if (j.contains("theta") && j["theta"].is_array() && !j["theta"].empty()) check_d(j["theta"].size() - 1);
        return j;
    }
    if (cfg.family.empty()) throw Failure{2, "give -i FILE or --family with --d"};
    check_d(cfg.d);
    Field f = Field::parse(cfg.field);
    FamilyTag tag = tag_from_flags(cfg, f);
    return array_json(generate_family(tag, cfg.d, f), tag);
}

std::optional<FamilyTag> stored_tag(const Json& j) { return parse_array_record(j).family; }

std::string matrix_table(const Matrix& m) {
    std::vector<std::vector<std::string>> cells(m.rows());
    std::size_t width = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) {
            cells[i].push_back(m(i, k).to_string());
            width = std::max(width, cells[i].back().size());
        }
    std::ostringstream os;
    for (const auto& row : cells) {
        os << " ";
        for (const auto& c : row) os << " " << std::string(width - c.size(), ' ') << c;
        os << "\n";
    }
    return os.str();
}

std::string vector_line(const Vector& v) {
    std::string s;
    for (const auto& x : v) s += " " + x.to_string();
    return s;
}

std::string array_table(const EigenvalueArray& arr) {
    std::ostringstream os;
    os << "field " << arr.field().spec() << "\nd " << arr.d() << "\ntheta" << vector_line(arr.theta()) << "\ntheta_star"
       << vector_line(arr.theta_star()) << "\n";
    return os.str();
}

std::string system_table(const TBSystem& sys) {
    std::ostringstream os;
    os << array_table(sys.array) << "c" << vector_line(sys.inters.c) << "\nb" << vector_line(sys.inters.b) << "\nc_star"
       << vector_line(sys.inters.c_star) << "\nb_star" << vector_line(sys.inters.b_star) << "\nA\n"
       << matrix_table(sys.A);
    return os.str();
}

std::string reports_text(const std::vector<VerificationReport>& reps, const std::string& format) {
    if (format == "json") {
        Json a = Json::array();
        for (const auto& r : reps) a.push_back(to_json(r));
        return a.dump(2) + "\n";
    }
    std::string s;
    for (const auto& r : reps) s += r.to_table();
    return s;
}

int cmd_generate(const Config& cfg) {
    Json j = source(cfg);
    EigenvalueArray arr = array_from_json(j);
    write_output(cfg, cfg.format == "json" ? j.dump(2) + "\n" : array_table(arr));
    return 0;
}

int cmd_build(const Config& cfg) {
    Json j = source(cfg);
    TBSystem sys = build_system(array_from_json(j));
    write_output(cfg, cfg.format == "json" ? system_json(sys, stored_tag(j)).dump(2) + "\n" : system_table(sys));
    return 0;
}

int cmd_verify(const Config& cfg) {
    Json j = source(cfg);
    SystemRecord rec = parse_system_record(j);
    ValidationResult v = validate_array(rec.array.field, rec.array.theta, rec.array.theta_star);
    std::vector<VerificationReport> reps;
    if (!v.ok()) {
        reps.push_back(validation_report(v));
    } else {
        reps = system_suites(system_from_json(j));
    }
    write_output(cfg, reports_text(reps, cfg.format));
    return all_passed(reps) ? 0 : 1;
}

int cmd_triple(const Config& cfg) {
    Json j = source(cfg);
    EigenvalueArray arr = array_from_json(j);
    if (!is_self_dual(arr)) arr = scaled_self_dual(arr);
    std::optional<FieldElement> beta;
    if (!cfg.beta.empty()) beta = arr.field().parse_element(cfg.beta);
    LeonardTriple tri = make_triple(build_system(arr), beta);
    WData w = build_W(tri);
    std::vector<VerificationReport> reps = triple_suites(tri, w);
    std::string report = reports_text(reps, cfg.report.empty() ? "table" : cfg.format);
    std::ostringstream os;
    if (cfg.format == "json") {
        os << triple_json(tri, w, stored_tag(j)).dump(2) << "\n";
    } else {
        os << system_table(tri.sys) << "beta " << tri.scalars.beta.to_string() << "\nz " << tri.scalars.z.to_string()
           << "\nkappa " << w.kappa.to_string() << "\nt" << vector_line(w.t) << "\nC\n"
           << matrix_table(tri.C) << "W\n" << matrix_table(w.W) << "P\n" << matrix_table(w.P);
        if (cfg.report.empty()) os << report;
    }
    write_output(cfg, os.str());
    if (!cfg.report.empty()) {
        std::ofstream out(cfg.report);
        if (!out) throw Failure{2, "cannot write " + cfg.report};
        out << report;
    } else if (cfg.format == "json") {
        std::cerr << report;
    }
    return all_passed(reps) ? 0 : 1;
}

int cmd_selftest(const Config& cfg) {
    const std::size_t top = cfg.d ? cfg.d : 4;
    check_d(top);
    bool ok = true;
    std::ostringstream os;
    auto run = [&](const std::string& label, const std::vector<VerificationReport>& reps) {
        bool pass = all_passed(reps);
        ok = ok && pass;
        os << (pass ? "PASS " : "FAIL ") << label << "\n";
        if (!pass)
            for (const auto& r : reps)
                if (!r.all_passed()) os << r.to_table();
    };
    for (const char* spec : {"Q", "Fp:101", "Q(i)"}) {
        Field f = Field::parse(spec);
        for (std::size_t d = 1; d <= top; ++d) {
            std::vector<FamilyTag> tags{{FamilyKind::Krawtchouk, f.one(), f.one(), std::nullopt, std::nullopt}};
            if (d % 2 == 0) tags.push_back({FamilyKind::BannaiIto, f.one(), f.one(), std::nullopt, std::nullopt});
            FieldElement q = f.from_int(std::string(spec) == "Fp:101" ? 5 : 2);
            tags.push_back({d % 2 ? FamilyKind::QRacahOdd : FamilyKind::QRacahEven, f.one(), f.one(), q, std::nullopt});
            for (const auto& tag : tags) {
                std::string label = std::string(family_name(tag.kind)) + " d=" + std::to_string(d) + " " + spec;
                TBSystem sys = build_system(generate_family(tag, d, f));
                run(label + " system", system_suites(sys, 10));
                if (std::string(spec) == "Q" && tag.kind != FamilyKind::BannaiIto) continue;
                std::optional<FieldElement> hint;
                if (d <= 2) hint = family_beta(tag, f);
                LeonardTriple tri = make_triple(sys, hint);
                run(label + " triple", triple_suites(tri, build_W(tri)));
            }
        }
    }
    write_output(cfg, os.str());
    return ok ? 0 : 1;
}

void add_source_flags(CLI::App* sub, Config& cfg) {
    sub->add_option("-i,--input", cfg.input, "Input JSON document, - for stdin");
    sub->add_option("--family", cfg.family,
                    "krawtchouk, bannai-ito, q-racah-even, q-racah-odd, q-racah, small-d1 or small-d2");
    sub->add_option("--d", cfg.d, "Diameter");
    sub->add_option("--h", cfg.h, "Scale of theta")->capture_default_str();
    sub->add_option("--h-star", cfg.h_star, "Scale of theta_star (default: h)");
    sub->add_option("--q", cfg.q, "q for the q-Racah families");
    sub->add_option("--beta", cfg.beta, "beta, for q-Racah without q or the triple case when d <= 2");
    sub->add_option("--field", cfg.field, "Q, Q(i), Q(sqrt:D), Fp:p, Fp2:p or Fp(sqrt:n):p")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TB tridiagonal systems and Leonard triples in exact arithmetic"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Config cfg;
    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Config&);
    };
    const Sub subs[] = {
        {"generate", "Emit the eigenvalue array of a family", cmd_generate},
        {"build", "Emit the system of an array", cmd_build},
        {"verify", "Run every system check; exit 1 on a failure", cmd_verify},
        {"triple", "Complete a self-dual system to a Leonard triple", cmd_triple},
        {"selftest", "Run all suites on a small grid (--d sets the largest diameter)", cmd_selftest},
    };
    std::vector<std::pair<CLI::App*, int (*)(const Config&)>> handlers;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        if (std::string(s.name) == "selftest")
            sub->add_option("--d", cfg.d, "Largest diameter (default 4)");
        else
            add_source_flags(sub, cfg);
        sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or table")
            ->check(CLI::IsMember({"json", "table"}))
            ->capture_default_str();
        if (std::string(s.name) == "triple") sub->add_option("--report", cfg.report, "Write the check report here");
        handlers.emplace_back(sub, s.run);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        for (const auto& [sub, run] : handlers)
            if (sub->parsed()) return run(cfg);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::RelationViolation:
            case ErrorCode::KappaMismatch:
            case ErrorCode::NotAnnihilated:
                return 1;
            default:
                return 2;
        }
    }
    return 2;
}
