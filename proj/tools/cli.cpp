#include "cli.hpp"

#include "qpsc/numfmt.hpp"
#include "qpsc/oracle.hpp"
#include "qpsc/tables.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

namespace qpsc::cli {

namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

constexpr const char* output_dir_variable = "QPSC_OUTPUT_DIR";

struct Config {
    double length = 1.0;
    std::optional<double> radius;
    bool degenerate = false;
    double mass = 1.0;
    double hbar = 1.0;
    std::string potential = "1.0*cos(theta)";
    double beta = 1.0;
    std::vector<int> max{3, 3};
    std::string format = "text";
    std::string output;
    std::vector<int> state;
    std::vector<int> oracle_basis{12, 12};
    bool check_complexity = false;
};

class FlagError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

CylinderGeometry geometry(const Config& c)
{
    if (c.radius) return CylinderGeometry(*c.radius, c.length, c.mass, c.hbar);
    return CylinderGeometry::degenerate(c.length, c.mass, c.hbar);
}

std::optional<QuantumNumbers> target_state(const Config& c)
{
    if (c.state.empty()) return std::nullopt;
    return QuantumNumbers(c.state[0], c.state[1]);
}

std::string g17(double x) { return format_significant(x, 17); }
std::string g6(double x) { return format_significant(x, 6); }

std::string label(const QuantumNumbers& qn)
{
    return "(" + std::to_string(qn.n_z()) + "," + std::to_string(qn.n_theta()) + ")";
}

std::string label(const std::vector<QuantumNumbers>& states)
{
    std::string s;
    for (const auto& qn : states) s += (s.empty() ? "" : ",") + label(qn);
    return s;
}

json pair_json(const QuantumNumbers& qn) { return json::array({qn.n_z(), qn.n_theta()}); }

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

json geometry_json(const CylinderGeometry& g, const Config& c)
{
    return {{"L", g.length()}, {"R", g.radius()}, {"mass", g.mass()}, {"hbar", g.hbar()},
            {"degenerate", !c.radius.has_value()}};
}

void emit(const std::string& content, const Config& c, std::ostream& out)
{
    if (c.output.empty()) {
        out << content;
        return;
    }
    std::filesystem::path path(c.output);
    if (path.is_relative())
        if (const char* dir = std::getenv(output_dir_variable); dir && *dir) path = std::filesystem::path(dir) / path;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw FlagError("cannot open output file " + path.string());
    file << content;
    if (!file) throw FlagError("cannot write output file " + path.string());
}

// ---- spectrum --------------------------------------------------------------

int cmd_spectrum(const Config& c, std::ostream& out)
{
    const auto geom = geometry(c);
    const auto levels = spectrum(geom, c.max[0], c.max[1]);
    const auto groups = degeneracy_groups(levels);

    std::map<QuantumNumbers, std::size_t> group_of;
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (const auto& qn : groups[g].members) group_of[qn] = g;

    std::string text;
    if (c.format == "json") {
        json doc;
        doc["geometry"] = geometry_json(geom, c);
        auto lv = json::array();
        for (const auto& l : levels) {
            const auto g = group_of.at(l.qn);
            lv.push_back({{"n_z", l.qn.n_z()}, {"n_theta", l.qn.n_theta()}, {"energy", l.energy}, {"group", g},
                          {"multiplicity", groups[g].multiplicity()}});
        }
        doc["levels"] = lv;
        auto gs = json::array();
        for (std::size_t g = 0; g < groups.size(); ++g) {
            auto members = json::array();
            for (const auto& qn : groups[g].members) members.push_back(pair_json(qn));
            gs.push_back({{"group", g}, {"energy", groups[g].energy}, {"members", members}});
        }
        doc["groups"] = gs;
        text = doc.dump(2) + "\n";
    } else if (c.format == "csv") {
        text = "n_z,n_theta,energy,group,multiplicity\n";
        for (const auto& l : levels) {
            const auto g = group_of.at(l.qn);
            text += std::to_string(l.qn.n_z()) + "," + std::to_string(l.qn.n_theta()) + "," + g17(l.energy) + "," +
                    std::to_string(g) + "," + std::to_string(groups[g].multiplicity()) + "\n";
        }
    } else {
        std::ostringstream s;
        s << "R = " << g6(geom.radius()) << ", L = " << g6(geom.length()) << ", m = " << g6(geom.mass())
          << ", hbar = " << g6(geom.hbar()) << "\n";
        s << std::left << std::setw(6) << "n_z" << std::setw(9) << "n_theta" << std::setw(14) << "energy"
          << std::setw(7) << "group" << "multiplicity\n";
        for (const auto& l : levels) {
            const auto g = group_of.at(l.qn);
            s << std::left << std::setw(6) << l.qn.n_z() << std::setw(9) << l.qn.n_theta() << std::setw(14)
              << g6(l.energy) << std::setw(7) << g << groups[g].multiplicity() << "\n";
        }
        text = s.str();
    }
    emit(text, c, out);
    return ok;
}

// ---- tables ----------------------------------------------------------------

int cmd_tables(const Config& c, const PotentialSpec& spec, std::ostream& out)
{
    const auto report = level_tables(spec, Coupling(c.beta), c.length);
    if (c.format == "json")
        emit(tables_to_json(report), c, out);
    else if (c.format == "csv")
        emit(tables_to_csv(report), c, out);
    else
        emit(tables_to_text(report), c, out);
    return ok;
}

// ---- admissibility ---------------------------------------------------------

std::string admissibility_text(const AdmissibilityReport& r, const Config& c)
{
    if (c.format == "json") {
        json doc{{"I1", complex_json(r.I1)},        {"I2", complex_json(r.I2)},
                 {"is_real", r.is_real},            {"is_nonzero", r.is_nonzero},
                 {"admissible", r.admissible}};
        return doc.dump(2) + "\n";
    }
    if (c.format == "csv")
        return "I1_re,I1_im,I2_re,I2_im,is_real,is_nonzero,admissible\n" + g17(r.I1.real()) + "," +
               g17(r.I1.imag()) + "," + g17(r.I2.real()) + "," + g17(r.I2.imag()) + "," +
               (r.is_real ? "true" : "false") + "," + (r.is_nonzero ? "true" : "false") + "," +
               (r.admissible ? "true" : "false") + "\n";
    return "I1 = " + format_complex(r.I1, 6) + "\nI2 = " + format_complex(r.I2, 6) +
           "\nreal: " + (r.is_real ? "yes" : "no") + "\nnonzero: " + (r.is_nonzero ? "yes" : "no") +
           "\nadmissible: " + (r.admissible ? "yes" : "no") + "\n";
}

int cmd_admissibility(const Config& c, const PotentialSpec& spec, std::ostream& out)
{
    const auto r = admissibility(spec);
    emit(admissibility_text(r, c), c, out);
    return r.admissible ? ok : inadmissible;
}

// ---- corrections -----------------------------------------------------------

int cmd_corrections(const Config& c, const PotentialSpec& spec, std::ostream& out)
{
    const auto target = target_state(c);
    if (!target) throw FlagError("corrections needs --state NZ NT");
    const auto geom = geometry(c);
    const Coupling beta(c.beta);

    // the target's degeneracy group, found among all states at or below its energy
    const double k = std::sqrt(2.0 * geom.mass() * energy(*target, geom)) / geom.hbar();
    const int reach_z = static_cast<int>(std::ceil(k * geom.length() / pi)) + 1;
    const int reach_t = static_cast<int>(std::ceil(k * geom.radius())) + 1;
    DegeneracyGroup group{{*target}, energy(*target, geom)};
    for (const auto& g : degeneracy_groups(spectrum(geom, reach_z, reach_t)))
        if (std::find(g.members.begin(), g.members.end(), *target) != g.members.end()) group = g;

    const auto block = build_block(group, spec, beta, geom);
    const auto solved = solve_block(block);
    const double e0 = group.energy;

    std::optional<StateCorrection> state;
    std::string state_note;
    try {
        state = state_correction(*target, spec, beta, geom, c.max[0], c.max[1]);
    } catch (const DegenerateDenominator& e) {
        state_note = e.what();
    }

    std::string text;
    if (c.format == "json") {
        json doc;
        doc["state"] = pair_json(*target);
        doc["E0"] = e0;
        auto members = json::array();
        for (const auto& qn : group.members) members.push_back(pair_json(qn));
        doc["group"] = members;
        auto h = json::array();
        for (const auto& z : block.matrix.data()) h.push_back(complex_json(z));
        doc["H"] = h;
        doc["E1"] = solved.corrections;
        doc["nondegenerate_correction"] = nondegenerate_correction(*target, spec, beta, geom);
        if (state) {
            auto coeffs = json::array();
            for (const auto& [qn, v] : state->coefficients)
                coeffs.push_back({{"n_z", qn.n_z()}, {"n_theta", qn.n_theta()}, {"c", complex_json(v)}});
            doc["coefficients"] = coeffs;
        } else {
            doc["coefficients_note"] = state_note;
        }
        text = doc.dump(2) + "\n";
    } else if (c.format == "csv") {
        text = "n_z,n_theta,re,im\n";
        if (state)
            for (const auto& [qn, v] : state->coefficients)
                text += std::to_string(qn.n_z()) + "," + std::to_string(qn.n_theta()) + "," + g17(v.real()) + "," +
                        g17(v.imag()) + "\n";
    } else {
        std::ostringstream s;
        s << "state " << label(*target) << ", E0 = " << g6(e0) << ", group " << label(group.members) << "\n";
        s << "E1:";
        for (double e1 : solved.corrections) s << " " << g6(e1);
        s << "\nE0 + E1:";
        for (double e1 : solved.corrections) s << " " << g6(e0 + e1);
        s << "\nbeta L I0 / (4 pi) = " << g6(nondegenerate_correction(*target, spec, beta, geom)) << "\n";
        if (state) {
            s << "first-order coefficients (" << state->coefficients.size() << " nonzero):\n";
            for (const auto& [qn, v] : state->coefficients) s << "  " << label(qn) << "  " << format_complex(v, 6) << "\n";
        } else {
            s << "first-order coefficients unavailable: " << state_note << "\n";
        }
        text = s.str();
    }
    emit(text, c, out);
    return ok;
}

// ---- verify ----------------------------------------------------------------

struct Check {
    std::string name;
    std::string predicted;
    std::string observed;
    std::string tolerance;
    bool pass;
};

class Verifier {
public:
    void add(std::string name, double predicted, double observed, double tolerance, bool pass)
    {
        checks_.push_back({std::move(name), g17(predicted), g17(observed), g17(tolerance), pass});
    }
    // observed is an error measure that must not exceed tolerance
    void bound(std::string name, double observed, double tolerance)
    {
        add(std::move(name), 0.0, observed, tolerance, observed <= tolerance);
    }
    void fail(std::string name, std::string message)
    {
        checks_.push_back({std::move(name), "-", std::move(message), "-", false});
    }

    bool passed() const
    {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check& k) { return k.pass; });
    }

    std::string render(const std::string& format) const
    {
        if (format == "json") {
            auto arr = json::array();
            for (const auto& k : checks_)
                arr.push_back({{"check", k.name}, {"predicted", k.predicted}, {"observed", k.observed},
                               {"tolerance", k.tolerance}, {"pass", k.pass}});
            return json{{"passed", passed()}, {"checks", arr}}.dump(2) + "\n";
        }
        if (format == "csv") {
            std::string s = "check,predicted,observed,tolerance,pass\n";
            for (const auto& k : checks_)
                s += "\"" + k.name + "\"," + k.predicted + ",\"" + k.observed + "\"," + k.tolerance + "," +
                     (k.pass ? "true" : "false") + "\n";
            return s;
        }
        std::ostringstream s;
        for (const auto& k : checks_)
            s << (k.pass ? "PASS  " : "FAIL  ") << k.name << ": predicted " << k.predicted << ", observed "
              << k.observed << ", tolerance " << k.tolerance << "\n";
        s << (passed() ? "all checks passed" : "verification FAILED") << "\n";
        return s.str();
    }

private:
    std::vector<Check> checks_;
};

void verify_moments(Verifier& v, const PotentialSpec& spec)
{
    double worst = 0.0;
    for (int m = -2; m <= 2; ++m) {
        std::optional<cd> closed;
        try {
            closed = angular_moment_closed(spec, m);
        } catch (const SingularParameter&) {
        }
        if (closed) worst = std::max(worst, std::abs(*closed - angular_moment(spec, m)));
    }
    v.bound("angular moments: closed form vs 4096-node quadrature", worst, 1e-9);

    double conj_defect = 0.0;
    for (int m = 0; m <= 3; ++m) {
        const cd a = moment(spec, m);
        conj_defect = std::max(conj_defect, std::abs(a - std::conj(moment(spec, -m))) / std::max(1.0, std::abs(a)));
    }
    v.bound("angular moments: I_m = conj(I_-m)", conj_defect, 1e-12);
}

int cmd_verify(const Config& c, const PotentialSpec& spec, std::ostream& out)
{
    Verifier v;

    if (c.check_complexity) {
        verify_moments(v, spec);
        const auto r = admissibility(spec);
        const double im = std::max(std::abs(r.I1.imag()), std::abs(r.I2.imag()));
        v.add("complex I_-1, I_+1 (expected inadmissible): |Im|", 1e-3, im, 1e-3, im > 1e-3 && !r.admissible);
        emit(v.render(c.format), c, out);
        return v.passed() ? ok : verification_failed;
    }

    const auto geom = geometry(c);
    const Coupling beta(c.beta);
    const auto levels = spectrum(geom, c.max[0], c.max[1]);

    double norm = 0.0;
    for (const auto& l : levels) norm = std::max(norm, normalization_residual(l.qn, geom, 256));
    v.bound("normalization residual, every state", norm, 1e-10);

    verify_moments(v, spec);

    {
        double scale = 0.0;
        std::vector<std::pair<cd, cd>> pairs;
        for (const auto& a : levels)
            for (const auto& b : levels) {
                const cd closed = matrix_element(a.qn, b.qn, spec, beta, geom);
                pairs.emplace_back(closed, quadrature_element(a.qn, b.qn, spec, beta, geom, 256, 256));
                scale = std::max(scale, std::abs(closed));
            }
        double worst = 0.0;
        for (const auto& [closed, quad] : pairs)
            worst = std::max(worst, std::abs(closed - quad) / std::max(std::abs(closed), scale * 1e-6));
        if (scale == 0.0) worst = 0.0;
        v.bound("matrix elements: closed form vs 256x256 surface quadrature (relative)", worst, 1e-8);
    }

    {
        double herm = 0.0;
        double trace = 0.0;
        double two_level = 0.0;
        for (const auto& g : degeneracy_groups(levels)) {
            const auto block = build_block(g, spec, beta, geom);
            herm = std::max(herm, block.matrix.hermiticity_defect());
            const auto solved = solve_block(block);
            double sum = 0.0;
            for (double e1 : solved.corrections) sum += e1;
            const double t = block.matrix.trace().real();
            trace = std::max(trace, std::abs(sum - t) / std::max(std::abs(t), block.matrix.max_abs() + 1e-300));
            if (block.matrix.size() == 2) {
                const auto roots = two_level_corrections(block);
                for (std::size_t k = 0; k < 2; ++k)
                    two_level = std::max(two_level, std::abs(roots[k] - solved.corrections[k]));
            }
            if (block.matrix.size() == 1)
                two_level = std::max(two_level, std::abs(solved.corrections[0] -
                                                         nondegenerate_correction(g.members[0], spec, beta, geom)));
        }
        v.bound("perturbation blocks hermitian", herm, 1e-12);
        v.bound("trace conservation per block (relative)", trace, 1e-10);
        v.bound("closed-form corrections vs block eigenvalues", two_level, 1e-12);
    }

    try {
        const TruncatedBasis basis(c.oracle_basis[0], c.oracle_basis[1]);
        const auto oracle_groups = degeneracy_groups(spectrum(geom, basis.max_nz(), basis.max_ntheta()));
        std::vector<DegeneracyGroup> groups;
        const auto target = target_state(c);
        for (const auto& g : oracle_groups) {
            const bool wanted = std::any_of(g.members.begin(), g.members.end(), [&](const QuantumNumbers& qn) {
                return target ? qn == *target : qn.n_z() <= c.max[0] && qn.n_theta() <= c.max[1];
            });
            if (wanted) groups.push_back(g);
        }
        if (target && groups.empty()) throw BasisTooSmall("target " + label(*target) + " is outside the truncated basis");

        const std::vector<double> betas{1e-2, 1e-3, 1e-4};
        const auto reports = perturbation_slope_check(groups, spec, geom, betas, basis);
        for (const auto& r : reports) {
            const std::string name = "slope " + label(r.targets);
            for (const auto& s : r.samples) {
                std::size_t worst = 0;
                for (std::size_t k = 0; k < s.slopes.size(); ++k)
                    if (std::abs(s.slopes[k] - r.predicted[k]) >= std::abs(s.slopes[worst] - r.predicted[worst]))
                        worst = k;
                v.add(name + " at beta " + g6(s.beta) + ", residual <= 5 beta", r.predicted[worst], s.slopes[worst],
                      5.0 * s.beta, s.residual <= 5.0 * s.beta);
            }
            const auto ratios = r.residual_ratios();
            for (std::size_t k = 0; k < ratios.size(); ++k) {
                // skip pairs whose smaller residual is within rounding of the eigenvalues
                const double floor = 100.0 * std::numeric_limits<double>::epsilon() *
                                     std::max(1.0, std::abs(r.unperturbed_energy)) / r.samples[k + 1].beta;
                if (r.samples[k + 1].residual <= floor) continue;
                v.add(name + " residual ratio beta " + g6(r.samples[k].beta) + " / " + g6(r.samples[k + 1].beta),
                      10.0, ratios[k], 5.0, ratios[k] >= 5.0 && ratios[k] <= 20.0);
            }
        }
    } catch (const BasisTooSmall& e) {
        v.fail("oracle basis", std::string("basis too small: ") + e.what());
    }

    emit(v.render(c.format), c, out);
    return v.passed() ? ok : verification_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config c;
    CLI::App app{"Energy levels of a particle on a cylinder surface under beta * z * V(theta).\n"
                 "Number formats: JSON uses the shortest text that reads back to the same double, "
                 "CSV 17 significant digits, text 6.\n"
                 "A relative --output path is resolved against $QPSC_OUTPUT_DIR when it is set.",
                 "qpsc"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--L", c.length, "cylinder length")->check(CLI::PositiveNumber);
        auto* r = sub->add_option("--R", c.radius, "cylinder radius")->check(CLI::PositiveNumber);
        auto* d = sub->add_flag("--degenerate", c.degenerate, "use R = L/pi (default when --R is absent)");
        r->excludes(d);
        sub->add_option("--mass", c.mass, "particle mass")->check(CLI::PositiveNumber);
        sub->add_option("--hbar", c.hbar, "reduced Planck constant")->check(CLI::PositiveNumber);
        sub->add_option("--potential", c.potential, "V(theta), e.g. \"1.0*cos(theta) + 0.5*sin(1.5*theta)\"")
            ->capture_default_str();
        sub->add_option("--beta", c.beta, "coupling constant")->capture_default_str();
        sub->add_option("--max", c.max, "largest n_z and n_theta to enumerate")
            ->expected(2)
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--format", c.format, "json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        sub->add_option("--output", c.output, "write to this file instead of standard output");
    };

    auto* spectrum_cmd = app.add_subcommand("spectrum", "unperturbed levels with degeneracy groups");
    auto* tables_cmd = app.add_subcommand("tables", "first-order blocks and corrections of the low-lying levels");
    auto* verify_cmd = app.add_subcommand("verify", "check closed forms against quadrature and exact diagonalization");
    auto* adm_cmd = app.add_subcommand("admissibility", "whether I_-1 and I_+1 are real and nonzero");
    auto* corr_cmd = app.add_subcommand("corrections", "first-order energy and state corrections of one state");
    for (auto* sub : {spectrum_cmd, tables_cmd, verify_cmd, adm_cmd, corr_cmd}) add_common(sub);

    for (auto* sub : {verify_cmd, corr_cmd})
        sub->add_option("--state", c.state, "target state NZ NT")->expected(2)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--oracle-basis", c.oracle_basis, "truncated basis NZ NT for exact diagonalization")
        ->expected(2)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_flag("--check-complexity", c.check_complexity,
                         "confirm that I_-1, I_+1 are complex (expected-inadmissible potentials)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return flag_error;
    }

    std::optional<PotentialSpec> spec;
    try {
        spec = parse_potential(c.potential);
    } catch (const ParseError& e) {
        err << "error: --potential \"" << c.potential << "\": " << e.what() << "\n";
        return parse_error;
    } catch (const std::invalid_argument& e) {
        err << "error: --potential \"" << c.potential << "\": " << e.what() << "\n";
        return parse_error;
    }

    try {
        if (spectrum_cmd->parsed()) return cmd_spectrum(c, out);
        if (tables_cmd->parsed()) return cmd_tables(c, *spec, out);
        if (verify_cmd->parsed()) return cmd_verify(c, *spec, out);
        if (adm_cmd->parsed()) return cmd_admissibility(c, *spec, out);
        return cmd_corrections(c, *spec, out);
    } catch (const InadmissiblePotential& e) {
        err << "error: " << e.what() << "\n";
        Config report = c;
        report.output.clear();
        err << admissibility_text(e.report(), report);
        return inadmissible;
    } catch (const FlagError& e) {
        err << "error: " << e.what() << "\n";
        return flag_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return flag_error;
    }
}

}  // namespace qpsc::cli
