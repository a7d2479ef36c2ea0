#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "risfox/errors.hpp"
#include "risfox/foxh.hpp"

// Format, one record per line, '#' starts a comment:
//   num_vars = D
//   arg = re im                       (D lines)
//   anchor = c_1 ... c_D              (optional)
//   term = num|den plus|minus offset coeff_1 ... coeff_D

namespace risfox::foxh {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void write_spec(std::ostream& os, const FoxHSpec& spec) {
    os << "# Fox-H spec\n";
    os << "num_vars = " << spec.num_vars << "\n";
    for (const auto& a : spec.args) os << "arg = " << num(a.re()) << " " << num(a.im()) << "\n";
    if (!spec.contour_re.empty()) {
        os << "anchor =";
        for (double c : spec.contour_re) os << " " << num(c);
        os << "\n";
    }
    for (const auto& t : spec.terms) {
        os << "term = " << (t.sign == Factor::numerator ? "num" : "den") << " "
           << (t.orientation == Orientation::plus ? "plus" : "minus") << " " << num(t.offset);
        for (double c : t.coeffs) os << " " << num(c);
        os << "\n";
    }
    try {
        const auto iv = validate_contour(spec);
        for (std::size_t j = 0; j < iv.size(); ++j) {
            os << "# interval[" << j << "] = (" << num(iv[j].lo) << ", " << num(iv[j].hi) << ")\n";
        }
    } catch (const std::exception& e) {
        os << "# contour: " << e.what() << "\n";
    }
}

FoxHSpec read_spec(std::istream& is) {
    std::size_t D = 0;
    bool have_d = false;
    std::vector<ComplexValue> args;
    std::vector<double> anchors;
    std::vector<GammaTerm> terms;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "", "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::istringstream vs(line.substr(eq + 1));
        if (key == "num_vars") {
            if (!(vs >> D) || D == 0) throw ParseError(lineno, key, "positive integer expected");
            have_d = true;
        } else if (key == "arg") {
            double re = 0, im = 0;
            if (!(vs >> re)) throw ParseError(lineno, key, "real part expected");
            vs >> im;
            try {
                args.emplace_back(re, im);
            } catch (const std::exception& e) {
                throw ParseError(lineno, key, e.what());
            }
        } else if (key == "anchor") {
            double c;
            while (vs >> c) anchors.push_back(c);
        } else if (key == "term") {
            if (!have_d) throw ParseError(lineno, key, "num_vars must come first");
            std::string sign, orient;
            GammaTerm t;
            if (!(vs >> sign >> orient >> t.offset)) {
                throw ParseError(lineno, key, "expected: num|den plus|minus offset coeffs...");
            }
            if (sign == "num") {
                t.sign = Factor::numerator;
            } else if (sign == "den") {
                t.sign = Factor::denominator;
            } else {
                throw ParseError(lineno, key, "sign must be num or den");
            }
            if (orient == "plus") {
                t.orientation = Orientation::plus;
            } else if (orient == "minus") {
                t.orientation = Orientation::minus;
            } else {
                throw ParseError(lineno, key, "orientation must be plus or minus");
            }
            double c;
            while (vs >> c) t.coeffs.push_back(c);
            if (t.coeffs.size() != D) throw ParseError(lineno, key, "need num_vars coefficients");
            terms.push_back(std::move(t));
        } else {
            throw ParseError(lineno, key, "unknown key");
        }
    }
    if (!have_d) throw ParseError(lineno, "num_vars", "missing");
    return make_spec(D, std::move(args), std::move(terms), std::move(anchors));
}

}  // namespace risfox::foxh
