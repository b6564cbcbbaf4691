// Package version records the build identity baked into release binaries.
package version

// Version is the semantic version of this build.
const Version = "1.4.0"

// Commit is stamped by the release pipeline.
var Commit = "unknown"

// Long renders the full version string.
func Long() string {
	return Version + "+" + Commit
}
