// Package types defines the slashing module's parameters.
package types

// Params bounds validator liveness.
type Params struct {
	SignedBlocksWindow int64
	JailSeconds        int64
}

// DefaultParams returns the genesis parameter set.
func DefaultParams() Params {
	return Params{SignedBlocksWindow: 10000, JailSeconds: 600}
}
