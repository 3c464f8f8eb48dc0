#pragma once

#include "pf/bicomplex.hpp"
#include "pf/globalize.hpp"
#include "pf/homotopy.hpp"
#include "pf/io.hpp"
#include "pf/lp_examples.hpp"
#include "pf/nerve.hpp"
#include "pf/subdivision.hpp"

namespace pfcli {

using pf::Json;

Json to_json(const pf::LocalCert& cert);
Json to_json(const pf::GlueReport& g);
Json to_json(const pf::CyclePairing& c);
Json to_json(const pf::GlobalizationReport& r);
Json to_json(const pf::FormulaReport& f);
Json to_json(const pf::BijectionCheck& b);
Json to_json(const pf::LpScan& s);
Json nerve_to_json(const pf::NerveComplex& nerve, int top);
Json tuple_json(const pf::Tuple& t);

} // namespace pfcli
