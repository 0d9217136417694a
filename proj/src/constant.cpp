#include "shq/constant.hpp"

#include <sstream>
#include <stdexcept>

namespace shq {

bool NodeConst::representable() const {
    return (zeta_pow == 0 || zeta_pow == kZetaOrder / 2) && (q_exp * 2).denominator() == 1;
}

ExactScalar NodeConst::to_scalar() const {
    if (!representable())
        throw std::domain_error("constant " + to_string() + " is not an element of Q(v)");
    ExactScalar s = ExactScalar::v_power(static_cast<int>((q_exp * 2).numerator()));
    return zeta_pow == 0 ? s : -s;
}

NodeConst NodeConst::sqrt() const {
    if (zeta_pow % 2 != 0)
        throw std::domain_error("square root of " + to_string() + " needs a root of unity of order above " +
                                std::to_string(kZetaOrder));
    return make(q_exp / 2, zeta_pow / 2);
}

std::string NodeConst::to_string() const {
    std::ostringstream os;
    if (zeta_pow == kZetaOrder / 2) os << "-";
    else if (zeta_pow != 0) os << "zeta" << kZetaOrder << "^" << zeta_pow << "*";
    os << "q^";
    if (q_exp.denominator() == 1) os << q_exp.numerator();
    else os << "(" << q_exp.numerator() << "/" << q_exp.denominator() << ")";
    return os.str();
}

std::string ConstantFactor::to_string() const {
    if (nodes_.empty()) return "1";
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [j, c] : nodes_) {
        if (!first) os << ", ";
        first = false;
        os << j << ": " << c.to_string();
    }
    os << "]";
    return os.str();
}

}  // namespace shq
