#include "lossy/netlist.hpp"

#include <cmath>
#include <charconv>
#include <numbers>
#include <sstream>

#include "lossy/matrix_io.hpp"

namespace lossy {

Element coupler(int i, int j, double theta) {
    return Element{ElementKind::coupler, i, j, theta};
}

Element phase_shift(int i, double phi) {
    return Element{ElementKind::phase, i, 0, phi};
}

namespace {

void validate_element(const Element& e, int n_modes) {
    if (!std::isfinite(e.angle))
        throw std::invalid_argument("netlist element: non-finite angle");
    if (e.port_a < 1 || e.port_a > n_modes)
        throw std::invalid_argument("netlist element: port " + std::to_string(e.port_a) +
                                    " out of range [1, " + std::to_string(n_modes) + "]");
    if (e.kind == ElementKind::coupler) {
        if (e.port_b < 1 || e.port_b > n_modes)
            throw std::invalid_argument("netlist element: port " + std::to_string(e.port_b) +
                                        " out of range [1, " + std::to_string(n_modes) + "]");
        if (e.port_a == e.port_b)
            throw std::invalid_argument("netlist element: coupler ports must be distinct");
    }
}

}  // namespace

void validate(const Netlist& nl) {
    if (nl.n_modes < 1) throw std::invalid_argument("netlist: n_modes must be positive");
    for (const Element& e : nl.elements) validate_element(e, nl.n_modes);
}

ComplexMatrix element_matrix(const Element& e, int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("element_matrix: n_modes must be positive");
    validate_element(e, n_modes);
    ComplexMatrix m = ComplexMatrix::identity(static_cast<std::size_t>(n_modes));
    if (e.kind == ElementKind::coupler) {
        const std::size_t i = static_cast<std::size_t>(e.port_a - 1);
        const std::size_t j = static_cast<std::size_t>(e.port_b - 1);
        const double c = std::cos(e.angle);
        const cplx is{0.0, std::sin(e.angle)};
        m(i, i) = c;
        m(i, j) = is;
        m(j, i) = is;
        m(j, j) = c;
    } else {
        const std::size_t i = static_cast<std::size_t>(e.port_a - 1);
        m(i, i) = std::polar(1.0, e.angle);
    }
    return m;
}

ComplexMatrix compile_netlist(const Netlist& nl) {
    validate(nl);
    ComplexMatrix m = ComplexMatrix::identity(static_cast<std::size_t>(nl.n_modes));
    for (const Element& e : nl.elements) m = element_matrix(e, nl.n_modes) * m;
    return m;
}

Netlist lossy_mzi_netlist(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12))
        throw std::invalid_argument("lossy_mzi_netlist: theta must be in [0, pi/2]");
    const double quarter = std::numbers::pi / 4.0;
    const double half = std::numbers::pi / 2.0;
    return Netlist{3,
                   {coupler(1, 2, quarter), coupler(2, 3, theta), phase_shift(1, half),
                    coupler(1, 2, quarter)}};
}

Netlist decompose(const ComplexMatrix& u) {
    if (!u.is_square() || u.rows() < 2 || u.rows() > 8)
        throw std::invalid_argument("decompose: supported sizes are 2..8");
    if (!is_unitary(u, 1e-8))
        throw std::invalid_argument("decompose: matrix is not unitary within 1e-8");

    const std::size_t n = u.rows();
    // Work on W = u^dagger: each Givens block G pushed to the netlist acts
    // on W from the left, and u = D^dagger * G_m * ... * G_1 once W has been
    // reduced to the diagonal D. Temporal order in the netlist is G_1 first,
    // the phase layer from D^dagger last.
    ComplexMatrix w = dagger(u);
    Netlist nl{static_cast<int>(n), {}};
    constexpr double kSkip = 1e-14;  // identity-level angles are dropped

    auto apply_left_block = [&](std::size_t i, std::size_t j, cplx g00, cplx g01, cplx g10,
                                cplx g11) {
        for (std::size_t col = 0; col < n; ++col) {
            const cplx wi = w(i, col);
            const cplx wj = w(j, col);
            w(i, col) = g00 * wi + g01 * wj;
            w(j, col) = g10 * wi + g11 * wj;
        }
    };

    for (std::size_t c = 0; c + 1 < n; ++c) {
        for (std::size_t r = n - 1; r > c; --r) {
            const std::size_t i = r - 1;  // eliminate w(r, c) against row r-1
            const cplx below = w(r, c);
            const cplx above = w(i, c);
            if (std::abs(below) <= kSkip) continue;

            double theta, phi;
            if (std::abs(above) == 0.0) {
                theta = std::numbers::pi / 2.0;
                phi = 0.0;
            } else {
                const cplx z = cplx{0.0, 1.0} * below / above;
                theta = std::atan(std::abs(z));
                phi = std::arg(z);
            }
            // G = coupler(i, r, theta) * phase(i, phi); row r of G*W vanishes
            // at column c by construction.
            const double co = std::cos(theta);
            const cplx is{0.0, std::sin(theta)};
            const cplx ph = std::polar(1.0, phi);
            apply_left_block(i, r, co * ph, is, is * ph, cplx{co, 0.0});
            if (std::abs(phi) > kSkip)
                nl.elements.push_back(phase_shift(static_cast<int>(i + 1), phi));
            nl.elements.push_back(
                coupler(static_cast<int>(i + 1), static_cast<int>(r + 1), theta));
        }
    }

    // Trailing phase layer: W is now diagonal with unit-modulus entries.
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = -std::arg(w(i, i));
        if (std::abs(phi) > kSkip) nl.elements.push_back(phase_shift(static_cast<int>(i + 1), phi));
    }
    return nl;
}

namespace {

int parse_port(const std::string& token, int line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw netlist_parse_error(line_no, "bad port '" + token + "'");
    return value;
}

double parse_angle(const std::string& token, int line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    // from_chars rejects an explicit leading '+'.
    if (first != last && *first == '+' && first + 1 != last && first[1] != '+' && first[1] != '-')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw netlist_parse_error(line_no, "bad angle '" + token + "'");
    return value;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

}  // namespace

Netlist parse_netlist(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    int line_no = 0;
    bool have_modes = false;
    Netlist nl;
    while (std::getline(lines, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;

        if (!have_modes) {
            if (tok[0] != "modes")
                throw netlist_parse_error(line_no, "expected 'modes <n>', got '" + tok[0] + "'");
            if (tok.size() != 2)
                throw netlist_parse_error(line_no, "expected 'modes <n>'");
            nl.n_modes = parse_port(tok[1], line_no);
            if (nl.n_modes < 1)
                throw netlist_parse_error(line_no, "mode count must be positive, got '" +
                                                       tok[1] + "'");
            have_modes = true;
            continue;
        }

        if (tok[0] == "coupler") {
            if (tok.size() != 4)
                throw netlist_parse_error(line_no, "expected 'coupler <i> <j> <angle>'");
            const Element e =
                coupler(parse_port(tok[1], line_no), parse_port(tok[2], line_no),
                        parse_angle(tok[3], line_no));
            try {
                validate_element(e, nl.n_modes);
            } catch (const std::invalid_argument& err) {
                throw netlist_parse_error(line_no, err.what());
            }
            nl.elements.push_back(e);
        } else if (tok[0] == "phase") {
            if (tok.size() != 3)
                throw netlist_parse_error(line_no, "expected 'phase <i> <angle>'");
            const Element e = phase_shift(parse_port(tok[1], line_no),
                                          parse_angle(tok[2], line_no));
            try {
                validate_element(e, nl.n_modes);
            } catch (const std::invalid_argument& err) {
                throw netlist_parse_error(line_no, err.what());
            }
            nl.elements.push_back(e);
        } else {
            throw netlist_parse_error(line_no, "unknown element '" + tok[0] + "'");
        }
    }
    if (!have_modes) throw netlist_parse_error(line_no ? line_no : 1, "missing 'modes <n>' header");
    return nl;
}

std::string serialize_netlist(const Netlist& nl) {
    validate(nl);
    std::string out = "modes " + std::to_string(nl.n_modes) + "\n";
    for (const Element& e : nl.elements) {
        if (e.kind == ElementKind::coupler) {
            out += "coupler " + std::to_string(e.port_a) + " " + std::to_string(e.port_b) + " " +
                   format_double(e.angle) + "\n";
        } else {
            out += "phase " + std::to_string(e.port_a) + " " + format_double(e.angle) + "\n";
        }
    }
    return out;
}

}  // namespace lossy
