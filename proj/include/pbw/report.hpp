#pragma once

// Uniform check reports shared by the verification modules and the CLI.

#include <string>
#include <vector>

namespace pbw {

enum class Status { Pass, Fail, Deferred };

std::string to_string(Status s);

struct CheckItem {
  std::string check;
  Status status = Status::Pass;
  std::string witness;  // residue, kernel vector, or deferral reason
  std::string kind;     // failure class, e.g. "RelationViolation"
};

struct Report {
  std::string title;
  std::vector<CheckItem> items;
  std::vector<std::string> notes;

  void pass(std::string check, std::string witness = {});
  void fail(std::string check, std::string kind, std::string witness);
  void defer(std::string check, std::string reason);
  void add(std::string check, bool ok, std::string kind, std::string witness_if_failed);
  void note(std::string text) { notes.push_back(std::move(text)); }
  void append(const Report& other);  // items and notes, prefixed by other.title

  bool passed() const;  // no item failed
  std::size_t count(Status s) const;
  const CheckItem* first_failure() const;
};

}  // namespace pbw
