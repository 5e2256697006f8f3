#include "qpsc/tables.hpp"

#include "qpsc/numfmt.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace qpsc {

namespace {

std::string state_label(const QuantumNumbers& qn)
{
    return "(" + std::to_string(qn.n_z()) + "," + std::to_string(qn.n_theta()) + ")";
}

std::string matrix_text(const ComplexMatrix& m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) s += ", ";
            s += format_complex(m(i, j), 6);
        }
    }
    return s + "]";
}

std::string csv_quote(const std::string& field) { return "\"" + field + "\""; }

}  // namespace

std::string TableRow::label() const
{
    std::string s;
    for (const auto& qn : states) {
        if (!s.empty()) s += ",";
        s += state_label(qn);
    }
    return s;
}

InadmissiblePotential::InadmissiblePotential(AdmissibilityReport report)
    : std::runtime_error("potential is inadmissible: I_1 = " + format_complex(report.I1, 17) +
                         ", I_2 = " + format_complex(report.I2, 17) + " must both be real and nonzero"),
      report_(report)
{
}

const std::vector<QuantumNumbers>& tabulated_states()
{
    static const std::vector<QuantumNumbers> states{{1, 1}, {1, 2}, {2, 1}, {2, 2},
                                                    {1, 3}, {3, 1}, {2, 3}, {3, 2}};
    return states;
}

TableReport level_tables(const PotentialSpec& spec, Coupling beta, double length)
{
    const auto adm = admissibility(spec);
    if (!adm.admissible) throw InadmissiblePotential(adm);

    const auto geom = CylinderGeometry::degenerate(length);

    std::vector<EnergyLevel> levels;
    auto states = tabulated_states();
    std::sort(states.begin(), states.end());
    for (const auto& qn : states) levels.push_back({qn, energy(qn, geom)});
    std::stable_sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });

    TableReport report{spec, beta.value(), length, moment(spec, 0), adm, {}};
    for (const auto& group : degeneracy_groups(levels)) {
        const auto block = build_block(group, spec, beta, geom);
        auto solved = solve_block(block);

        TableRow row{group.members, group.multiplicity() > 1, group.energy, block.matrix,
                     std::move(solved.corrections), std::nullopt, {}};
        if (group.multiplicity() == 1) row.note = "no degeneracy";
        if (group.multiplicity() == 2) {
            const int a = group.members[0].n_z();
            const int b = group.members[1].n_z();
            row.z_coefficient = z_overlap(a, b, length) * pi * pi / (length * length);
            if (!splitting_rule(a, b)) {
                row.note = "off-diagonal elements vanish (n_z sum even)";
                if (block.matrix(0, 0) != 0.0) row.note += "; diagonal beta L I_0/(4 pi) is nonzero because I_0 != 0";
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string tables_to_json(const TableReport& report)
{
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json j;
        auto pair = nlohmann::ordered_json::array();
        for (const auto& qn : row.states) pair.push_back({qn.n_z(), qn.n_theta()});
        j["pair"] = pair;
        j["label"] = row.label();
        j["degenerate"] = row.degenerate;
        auto h = nlohmann::ordered_json::array();
        for (const auto& z : row.matrix.data()) h.push_back({z.real(), z.imag()});
        j["H"] = h;
        j["E1"] = row.corrections;
        j["E0"] = row.unperturbed_energy;
        auto shifted = nlohmann::ordered_json::array();
        for (double e1 : row.corrections) shifted.push_back(row.unperturbed_energy + e1);
        j["E"] = shifted;
        if (row.z_coefficient) j["z_coefficient"] = *row.z_coefficient;
        if (!row.note.empty()) j["note"] = row.note;
        rows.push_back(std::move(j));
    }
    return rows.dump(2) + "\n";
}

std::string tables_to_text(const TableReport& report)
{
    std::ostringstream out;
    out << "potential: " << format_potential(report.potential) << "\n"
        << "beta = " << format_significant(report.beta, 6) << ", L = " << format_significant(report.length, 6)
        << ", R = L/pi\n"
        << "I0 = " << format_complex(report.I0, 6) << ", I1 = " << format_complex(report.admissibility.I1, 6)
        << ", I2 = " << format_complex(report.admissibility.I2, 6) << "\n\n";

    out << "First-order matrix elements\n";
    out << std::left << std::setw(16) << "states" << std::setw(12) << "degenerate" << std::setw(14) << "E0"
        << std::setw(12) << "z coeff" << "H\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(16) << row.label() << std::setw(12) << (row.degenerate ? "yes" : "no")
            << std::setw(14) << format_significant(row.unperturbed_energy, 6) << std::setw(12)
            << (row.z_coefficient ? format_significant(*row.z_coefficient, 6) : std::string("-"))
            << matrix_text(row.matrix);
        if (!row.note.empty()) out << "  # " << row.note;
        out << "\n";
    }

    out << "\nFirst-order energy corrections\n";
    out << std::left << std::setw(16) << "states" << std::setw(30) << "E1" << "E0 + E1\n";
    for (const auto& row : report.rows) {
        std::string e1;
        std::string e;
        for (double c : row.corrections) {
            if (!e1.empty()) e1 += ", ", e += ", ";
            e1 += format_significant(c, 6);
            e += format_significant(row.unperturbed_energy + c, 6);
        }
        out << std::left << std::setw(16) << row.label() << std::setw(30) << e1 << e << "\n";
    }
    return out.str();
}

std::string tables_to_csv(const TableReport& report)
{
    std::string out = "label,E0,E0_plus_E1_minus,E0_plus_E1_plus\n";
    for (const auto& row : report.rows) {
        const double e0 = row.unperturbed_energy;
        out += csv_quote(row.label()) + "," + format_significant(e0, 17) + "," +
               format_significant(e0 + row.corrections.front(), 17) + "," +
               format_significant(e0 + row.corrections.back(), 17) + "\n";
    }
    return out;
}

}  // namespace qpsc
