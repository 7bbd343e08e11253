#include "pbw/report.hpp"

#include <algorithm>

namespace pbw {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Deferred:
      return "deferred";
  }
  return "?";
}

void Report::pass(std::string check, std::string witness) {
  items.push_back({std::move(check), Status::Pass, std::move(witness), {}});
}

void Report::fail(std::string check, std::string kind, std::string witness) {
  items.push_back({std::move(check), Status::Fail, std::move(witness), std::move(kind)});
}

void Report::defer(std::string check, std::string reason) {
  items.push_back({std::move(check), Status::Deferred, std::move(reason), {}});
}

void Report::add(std::string check, bool ok, std::string kind, std::string witness_if_failed) {
  if (ok)
    pass(std::move(check));
  else
    fail(std::move(check), std::move(kind), std::move(witness_if_failed));
}

void Report::append(const Report& other) {
  const std::string prefix = other.title.empty() ? "" : other.title + ": ";
  for (const auto& it : other.items) items.push_back({prefix + it.check, it.status, it.witness, it.kind});
  for (const auto& n : other.notes) notes.push_back(prefix + n);
}

bool Report::passed() const { return count(Status::Fail) == 0; }

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [&](const CheckItem& i) { return i.status == s; }));
}

const CheckItem* Report::first_failure() const {
  for (const auto& i : items)
    if (i.status == Status::Fail) return &i;
  return nullptr;
}

}  // namespace pbw
