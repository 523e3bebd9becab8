#pragma once

#include <string>

#include "bbp/fe.hpp"
#include "bbp/instance.hpp"
#include "bbp/lp.hpp"

namespace bbp {

/// Instance document: {"n1","n2","lower","upper","objective","rows"}.
/// Rows may carry sense "<=", ">=" or "=="; inequalities are slack-converted
/// on load. Residual channels appear as {"zPlus":{"bound","cost"},...}.
std::string instanceToJson(const BBPInstance& inst);
BBPInstance instanceFromJson(const std::string& text);
BBPInstance loadInstance(const std::string& path);
void saveInstance(const BBPInstance& inst, const std::string& path);

FEInput feFromJson(const std::string& text);
FEInput loadFE(const std::string& path);

/// Debug dump of an assembled LP, for reproduction outside the solver.
std::string lpToJson(const LPProblem& p);

}  // namespace bbp
