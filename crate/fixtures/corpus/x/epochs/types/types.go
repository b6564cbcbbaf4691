// Package types defines epoch metadata.
package types

// EpochInfo describes one recurring epoch. All counters are fixed-width.
type EpochInfo struct {
	Identifier     string
	DurationSecs   int64
	CurrentEpoch   int64
	StartHeight    int64
}
