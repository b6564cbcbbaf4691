// Package types defines the price oracle's vote shapes.
package types

import roottypes "example.com/demochain/types"

// FeedAdmin may rotate the accepted price feeds. Referenced by the keeper on
// every tally, so the address is part of consensus state.
const FeedAdmin = "demo1fsdtv62ktlqx0u0rad0m3gkzpcypd0yzdzmjlw" // want cosmos/hardcoded-bech32

// Vote is a single validator's price submission.
type Vote struct {
	Voter string
	Price int64
	Round int // want cosmos/platform-int
}

// MsgSubmitVote carries a vote into the state machine.
type MsgSubmitVote struct {
	Voter string
	Price int64
}

// MsgServer handles the oracle module's transactions.
type MsgServer interface {
	SubmitVote(ctx roottypes.Context, msg MsgSubmitVote) error
}
