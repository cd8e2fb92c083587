#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lossy/matrix.hpp"

namespace lossy {

enum class ElementKind { coupler, phase };

/// One primitive circuit element. Ports are 1-based mode indices.
///   coupler(i, j, theta): rows/cols i,j carry [[cos th, i sin th],
///                                              [i sin th, cos th]]
///   phase(i, phi):        entry (i, i) = e^{i phi}
struct Element {
    ElementKind kind;
    int port_a = 0;
    int port_b = 0;      // couplers only
    double angle = 0.0;  // mixing angle theta or phase phi, radians

    bool operator==(const Element&) const = default;
};

Element coupler(int i, int j, double theta);
Element phase_shift(int i, double phi);

/// Ordered element list over n modes; the first element acts first on the
/// input state, so compilation multiplies later elements on the left.
struct Netlist {
    int n_modes = 0;
    std::vector<Element> elements;

    bool operator==(const Netlist&) const = default;
};

/// Raised for grammar or range violations; carries the 1-based source line.
struct netlist_parse_error : std::runtime_error {
    netlist_parse_error(int line_no, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + message),
          line(line_no) {}
    int line;
};

/// Port range / distinctness validation. Throws std::invalid_argument.
void validate(const Netlist& nl);

/// n_modes x n_modes transfer matrix of a single element.
ComplexMatrix element_matrix(const Element& e, int n_modes);

/// Ordered product of element matrices, later elements on the left.
/// The result is unitary (every element is).
ComplexMatrix compile_netlist(const Netlist& nl);

/// The 3-mode lossy Mach-Zehnder: a 50/50 coupler on modes 1-2, a coupler
/// of angle theta leaking mode 2 into the ancilla mode 3, then a pi/2
/// phase on mode 1 and a second 50/50 coupler. Compiles to the dilation
/// of the lossy beamsplitter with eta = cos(theta).
Netlist lossy_mzi_netlist(double theta);

/// Decomposes a unitary (sizes 2-8, unitary within 1e-8) into couplers and
/// phases by Givens-style triangular elimination, columns left to right,
/// rows bottom up, plus a trailing per-mode phase layer. Compiling the
/// result reproduces u within 1e-8 in max-norm.
Netlist decompose(const ComplexMatrix& u);

/// Text grammar, line oriented:
///   modes <n>
///   coupler <i> <j> <angle>
///   phase <i> <angle>
/// '#' starts a comment; ports are 1-based; angles are decimal radians.
Netlist parse_netlist(const std::string& text);

/// Canonical serialization: angles with 17 significant digits, LF endings.
/// parse(serialize(nl)) == nl, and serialize(parse(text)) is the canonical
/// form of text.
std::string serialize_netlist(const Netlist& nl);

}  // namespace lossy
