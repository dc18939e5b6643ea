#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "jumploci/jump_loci.hpp"

namespace fixtures {

inline std::string corpus_path(const std::string& name) { return std::string(JUMPLOCI_CORPUS_DIR) + "/" + name + ".json"; }

inline jumploci::FinitePresentation presentation(const std::string& name) {
    std::ifstream in(corpus_path(name));
    std::stringstream s;
    s << in.rdbuf();
    return jumploci::parse_presentation_json(s.str());
}

inline jumploci::GroupData group(const std::string& name) { return jumploci::GroupData::from(presentation(name)); }

inline jumploci::Rational q(long p, long r = 1) {
    jumploci::Rational x(p, r);
    x.canonicalize();
    return x;
}

}  // namespace fixtures

namespace fixtures {

// unitary character with the given angles on the generators; the caller
// keeps them consistent with the relators
inline jumploci::Character from_generator_angles(const jumploci::AbelianizationData& a,
                                                 const std::vector<jumploci::Rational>& angles) {
    std::vector<jumploci::Rational> free, torsion;
    for (std::size_t k = 0; k < a.coordinate_count(); ++k) {
        jumploci::Rational s = 0;
        for (std::size_t j = 0; j < angles.size(); ++j) s += angles[j] * a.basis_in_generators(k, j);
        (k < a.free_rank ? free : torsion).push_back(jumploci::frac(s));
    }
    return jumploci::Character::unitary(free, torsion);
}

}  // namespace fixtures
