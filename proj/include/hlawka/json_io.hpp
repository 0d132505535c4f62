#pragma once

#include <json.hpp>

#include "hlawka/fourier.hpp"
#include "hlawka/funceq.hpp"
#include "hlawka/lattice.hpp"
#include "hlawka/types.hpp"

namespace hlawka {

// {"re": .., "im": ..}
nlohmann::ordered_json complex_json(Complex z);

// {"value": {re, im}, "error_estimate": .., "truncation": {..}, "warnings": [..]}
nlohmann::ordered_json to_json(const EvalResult& r);
nlohmann::ordered_json to_json(const CheckReport& r);
nlohmann::ordered_json to_json(const Spectrum& s);
nlohmann::ordered_json to_json(const FourierTable& t);
nlohmann::ordered_json to_json(const PerronResult& p);

}  // namespace hlawka
