#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fincat {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

enum class ErrorKind {
  Validation,
  NotAPartialOrder,
  NotAssociative,
  UnitFails,
  BudgetExceeded,
  CategoryMismatch,
  SizeMismatch,
  NotACorrespondenceBiset,
  PreconditionFails,
  WrongBaseCategories,
  NotAPoset,
  NotBirepresentable,
  TruncationUnreliable,
  AmbiguousFilling,
  Parse,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::UnitFails: return "UnitFails";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CategoryMismatch: return "CategoryMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotACorrespondenceBiset: return "NotACorrespondenceBiset";
    case ErrorKind::PreconditionFails: return "PreconditionFails";
    case ErrorKind::WrongBaseCategories: return "WrongBaseCategories";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotBirepresentable: return "NotBirepresentable";
    case ErrorKind::TruncationUnreliable: return "TruncationUnreliable";
    case ErrorKind::AmbiguousFilling: return "AmbiguousFilling";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// One violated law. `where` holds the offending ids (morphisms, objects or
// elements), in the order given by the kind's name.
struct Issue {
  enum class Kind {
    DanglingIndex,
    IdentityLawFails,
    MissingComposite,
    UnexpectedComposite,
    NonAssociative,
    IdentityNotIdentity,
    CompositionFails,
    NotFunctorial,
  };
  Kind kind;
  std::vector<std::size_t> where;
  std::string message;
};

inline const char* to_string(Issue::Kind k) {
  switch (k) {
    case Issue::Kind::DanglingIndex: return "DanglingIndex";
    case Issue::Kind::IdentityLawFails: return "IdentityLawFails";
    case Issue::Kind::MissingComposite: return "MissingComposite";
    case Issue::Kind::UnexpectedComposite: return "UnexpectedComposite";
    case Issue::Kind::NonAssociative: return "NonAssociative";
    case Issue::Kind::IdentityNotIdentity: return "IdentityNotIdentity";
    case Issue::Kind::CompositionFails: return "CompositionFails";
    case Issue::Kind::NotFunctorial: return "NotFunctorial";
  }
  return "Unknown";
}

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues)
      : Error(ErrorKind::Validation, summarize(issues)), issues_(std::move(issues)) {}
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  static std::string summarize(const std::vector<Issue>& issues) {
    std::string s = std::to_string(issues.size()) + " issue(s)";
    if (!issues.empty()) s += "; first: " + std::string(to_string(issues.front().kind)) + " " + issues.front().message;
    return s;
  }
  std::vector<Issue> issues_;
};

// Step counter shared by the exhaustive searches.
struct Budget {
  std::uint64_t max_steps = 5'000'000;
};

class StepCounter {
 public:
  explicit StepCounter(Budget b, const char* what = "search") : limit_(b.max_steps), what_(what) {}
  void tick(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > limit_) throw Error(ErrorKind::BudgetExceeded, std::string(what_) + " exceeded " + std::to_string(limit_) + " steps");
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  const char* what_;
};

enum class Tri { No, Yes, Unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::No: return "false";
    case Tri::Yes: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace fincat
