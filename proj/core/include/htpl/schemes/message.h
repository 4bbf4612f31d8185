// Copyright 2026 The HTPL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HTPL_SCHEMES_MESSAGE_H_
#define HTPL_SCHEMES_MESSAGE_H_

#include <cstdint>

namespace htpl {

// Encoder output: either the error message or a payload carrying a joint
// type identifier and a bin (or codeword) index.
struct Message {
  bool is_error = true;
  uint64_t type_index = 0;
  int64_t bin_or_index = 0;

  static Message Error() { return Message{}; }
  static Message Payload(uint64_t type_index, int64_t bin_or_index) {
    return Message{false, type_index, bin_or_index};
  }

  friend bool operator==(const Message&, const Message&) = default;
};

}  // namespace htpl

#endif  // HTPL_SCHEMES_MESSAGE_H_
