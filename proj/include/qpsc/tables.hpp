#pragma once

// Low-lying spectrum of the R = L/pi cylinder under beta * z * V(theta): the
// first-order matrix for each degeneracy group among
// (1,1), (1,2), (2,1), (2,2), (1,3), (3,1), (2,3), (3,2), its corrections, and
// the split-level rows used to draw the splitting diagram.

#include "qpsc/cylinder.hpp"
#include "qpsc/hermitian.hpp"
#include "qpsc/perturbation.hpp"
#include "qpsc/potential.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpsc {

struct TableRow {
    std::vector<QuantumNumbers> states;
    bool degenerate;
    double unperturbed_energy;
    ComplexMatrix matrix;             // first-order block, rows follow `states`
    std::vector<double> corrections;  // ascending
    /// For two-state rows: z_overlap of the pair in units of L^2 / pi^2, so the
    /// off-diagonal element is z_coefficient * beta L I / pi^3.
    std::optional<double> z_coefficient;
    std::string note;

    std::string label() const;
};

struct TableReport {
    PotentialSpec potential;
    double beta;
    double length;
    std::complex<double> I0;
    AdmissibilityReport admissibility;
    std::vector<TableRow> rows;
};

class InadmissiblePotential : public std::runtime_error {
public:
    explicit InadmissiblePotential(AdmissibilityReport report);
    const AdmissibilityReport& report() const noexcept { return report_; }

private:
    AdmissibilityReport report_;
};

/// The eight tabulated states in order.
const std::vector<QuantumNumbers>& tabulated_states();

/// Throws InadmissiblePotential when I_{-1}, I_{+1} are not both real and nonzero,
/// since the +- square root of I_1 I_2 has no real branch to report otherwise.
TableReport level_tables(const PotentialSpec& spec, Coupling beta, double length = 1.0);

/// JSON array of rows {pair, degenerate, H, E1, E0, ...}; numbers round-trip exactly.
std::string tables_to_json(const TableReport& report);

/// Aligned plain-text tables, 6 significant digits.
std::string tables_to_text(const TableReport& report);

/// CSV (header row, LF): label, E0, E0 + lowest E1, E0 + highest E1.
std::string tables_to_csv(const TableReport& report);

}  // namespace qpsc
