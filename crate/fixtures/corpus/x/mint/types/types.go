// Package types defines the mint module's parameters and messages.
package types

import roottypes "example.com/demochain/types"

// Params controls the inflation schedule.
type Params struct {
	MintDenom     string
	BlocksPerYear int // want cosmos/platform-int
	MaxInflation  int64
}

// DefaultParams returns the genesis parameter set.
func DefaultParams() Params {
	return Params{MintDenom: "udemo", BlocksPerYear: 6311520, MaxInflation: 20}
}

// MsgMint asks the module to mint coins to the community pool.
type MsgMint struct {
	Authority string
	Amount    int64
}

// MsgServer handles the mint module's transactions.
type MsgServer interface {
	Mint(ctx roottypes.Context, msg MsgMint) error
}
