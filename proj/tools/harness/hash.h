// Copyright 2026 The GQRE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GQRE_TOOLS_HARNESS_HASH_H_
#define GQRE_TOOLS_HARNESS_HASH_H_

#include <string>
#include <string_view>

namespace gqre::harness {

// Lowercase hex SHA-1 of "blob <size>\0<contents>", the object id git
// assigns to a file with these contents.
std::string GitBlobSha1(std::string_view contents);

}  // namespace gqre::harness

#endif  // GQRE_TOOLS_HARNESS_HASH_H_
