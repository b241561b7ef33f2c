#include "tournament/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "tournament/error.hpp"

namespace tourney {

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

ValueDistribution parse_distribution(const std::string& desc) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(desc);
    while (std::getline(in, token, ':')) parts.push_back(token);
    if (parts.size() != 3 || parts[0] != "uniform") {
        throw ConfigError("distribution descriptor must look like uniform:LO:HI, got: " + desc);
    }
    double lo = 0.0;
    double hi = 0.0;
    try {
        lo = std::stod(parts[1]);
        hi = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("distribution bounds must be numbers, got: " + desc);
    }
    return ValueDistribution::uniform(lo, hi);
}

std::string distribution_token(const ValueDistribution& d) {
    if (d.kind() != ValueDistribution::Kind::Uniform) {
        throw ConfigError("only uniform distributions have a CLI descriptor");
    }
    return "uniform:" + fmt_g(d.support_lo()) + ":" + fmt_g(d.support_hi());
}

}  // namespace tourney
