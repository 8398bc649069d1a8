#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adapt/analyzer/binding.hpp"
#include "adapt/frontend/ast.hpp"
#include "adapt/frontend/diagnostic.hpp"
#include "adapt/resmodel/resource.hpp"

namespace adapt::analysis {

/// Demand of every entry point of one adaptation.
struct DemandReport {
  std::map<std::string, res::ResourceDemand> per_entry_point;  // keyed by `Class.method`
  std::set<std::string> presence_union;

  bool operator==(const DemandReport&) const = default;
};

/// The invokable surface: every adaptable method, every `export fn`, and
/// any plain method named `main`. Sorted.
std::vector<MethodRef> entry_points(const asl::AdaptableProgram& program);

/// Abstract resource semantics of a program under one binding. Method
/// demands are memoised, so one analyzer per (program, binding) is cheap to
/// query repeatedly. The program must validate (acyclic calls).
class ResourceAnalyzer {
 public:
  ResourceAnalyzer(const asl::AdaptableProgram& program, const Binding& binding);

  const res::ResourceDemand& method_demand(const MethodRef& method);
  res::ResourceDemand block_demand(const asl::Block& block);

 private:
  const asl::MethodDef& resolve(const MethodRef& method) const;
  res::ResourceDemand stmt_demand(const asl::Stmt& stmt);

  const asl::AdaptableProgram& program_;
  const Binding& binding_;
  std::map<MethodRef, res::ResourceDemand> memo_;
  std::set<MethodRef> in_progress_;
};

res::ResourceDemand analyze_method(const asl::AdaptableProgram& program, const Binding& binding,
                                   const MethodRef& method);

DemandReport analyze_adaptation(const asl::AdaptableProgram& program, const Binding& binding);

/// Analysis of a plain (already tailored) program.
DemandReport analyze_plain(const asl::AdaptableProgram& program);

/// An adaptation fits a supply iff every entry point fits individually.
/// Failures are reported per entry point.
struct ReportFit {
  bool ok = true;
  std::map<std::string, res::FitResult> failing;  // entry point -> failures

  explicit operator bool() const { return ok; }
  std::string explain() const;
};

ReportFit report_fits(const DemandReport& report, const res::ResourceSupply& supply);

/// Checks resource usage: a name must be used with a single kind, and when a
/// profile is given it must be declared there with that kind.
std::vector<asl::Diagnostic> check_resources(const asl::AdaptableProgram& program,
                                             const res::ResourceProfile* profile);

DemandReport read_report(const nlohmann::json& j, const std::string& path);
void to_json(nlohmann::json& j, const DemandReport& r);
void from_json(const nlohmann::json& j, DemandReport& r);

}  // namespace adapt::analysis
