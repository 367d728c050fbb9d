#pragma once

// Generated at build time from data/*.json.
namespace rankforge::embedded {
const char* catalog_json();
const char* termlists_json();
const char* level100_json();
}  // namespace rankforge::embedded
