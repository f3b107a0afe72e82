#include "arbor/tree_word.hpp"

#include "arbor/error.hpp"

namespace arbor {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DepthMismatch: return "depth_mismatch";
    case ErrorCode::LevelOutOfRange: return "level_out_of_range";
    case ErrorCode::MalformedEncoding: return "malformed_encoding";
    case ErrorCode::NotAMember: return "not_a_member";
    case ErrorCode::VacuousDepth: return "vacuous_depth";
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::PostcriticalBase: return "postcritical_base";
    case ErrorCode::PeriodicBase: return "periodic_base";
    case ErrorCode::WrongPortrait: return "wrong_portrait";
    case ErrorCode::MissingSquareRoot: return "missing_square_root";
    case ErrorCode::InvariantViolation: return "invariant_violation";
  }
  return "unknown";
}

TreeWord TreeWord::parse(std::string_view text) {
  if (text.size() > kMaxLength) {
    throw Error(ErrorCode::InvalidArgument, "tree word too long");
  }
  std::uint64_t value = 0;
  for (char ch : text) {
    if (ch != 'a' && ch != 'b') {
      throw Error(ErrorCode::InvalidArgument,
                  "tree word symbols must be 'a' or 'b'");
    }
    value = 2 * value + (ch == 'b' ? 1u : 0u);
  }
  return TreeWord(static_cast<unsigned>(text.size()), value);
}

TreeWord TreeWord::from_index(std::uint64_t index) {
  const unsigned level = level_of_index(index);
  if (level > kMaxLength) {
    throw Error(ErrorCode::InvalidArgument, "heap index too large");
  }
  return TreeWord(level, index - first_index_at_level(level));
}

TreeWord TreeWord::from_bits(unsigned length, std::uint64_t value) {
  if (length > kMaxLength || (value >> length) != 0) {
    throw Error(ErrorCode::InvalidArgument, "bad tree word bits");
  }
  return TreeWord(length, value);
}

unsigned TreeWord::symbol(unsigned k) const {
  if (k >= length_) {
    throw Error(ErrorCode::InvalidArgument, "symbol position out of range");
  }
  return static_cast<unsigned>((value_ >> (length_ - 1 - k)) & 1u);
}

TreeWord TreeWord::child(unsigned symbol) const {
  if (length_ >= kMaxLength) {
    throw Error(ErrorCode::InvalidArgument, "tree word too long");
  }
  return TreeWord(length_ + 1, 2 * value_ + (symbol & 1u));
}

TreeWord TreeWord::prefix(unsigned k) const {
  if (k > length_) {
    throw Error(ErrorCode::InvalidArgument, "prefix longer than word");
  }
  return TreeWord(k, value_ >> (length_ - k));
}

TreeWord TreeWord::concat(const TreeWord& tail) const {
  if (length_ + tail.length_ > kMaxLength) {
    throw Error(ErrorCode::InvalidArgument, "tree word too long");
  }
  return TreeWord(length_ + tail.length_, (value_ << tail.length_) | tail.value_);
}

std::string TreeWord::str() const {
  std::string out(length_, 'a');
  for (unsigned k = 0; k < length_; ++k) {
    if ((value_ >> (length_ - 1 - k)) & 1u) out[k] = 'b';
  }
  return out;
}

}  // namespace arbor
