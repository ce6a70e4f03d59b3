#pragma once

// Loading the sample descriptions shipped in fixtures/.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plogic/parser.hpp"

#ifndef PLOGIC_FIXTURE_DIR
#error "PLOGIC_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(PLOGIC_FIXTURE_DIR) + "/" + name + ".pl"; }

inline std::string text(const std::string& name) {
    std::ifstream in(path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline plogic::PlausibleDescription load(const std::string& name) { return plogic::load_description(text(name)); }

inline const std::vector<std::string>& all() {
    static const std::vector<std::string> names{"ambiguity", "cephalopod", "lottery2",  "lottery3",   "lottery7",
                                                "lottery7_g", "lottery7_h", "lottery7_gh", "nautilus", "nautilus_known", "self_undermining"};
    return names;
}

inline plogic::Formula F(const std::string& s) { return plogic::parse_formula(s); }

}  // namespace fixtures
