// Package types defines the supply module's constants and messages.
package types

import roottypes "example.com/demochain/types"

// ModuleTreasury receives burn remainders. The keeper credits it on every
// burn, so the constant is consensus state.
const ModuleTreasury = "demo1vmafl8f3s6uuzwnxkqz0eza47v6ecn0tauj0xs" // want cosmos/hardcoded-bech32

// LegacySample is a doc-comment example inherited from upstream; its
// checksum is intentionally broken and it is never a real address.
const LegacySample = "cosmos1qqqsyqcyq5rqwzqfpg9scrgwpugpzysnzs23v9ccrydpk8qarc0jqxwjhjw" // decoy cosmos/hardcoded-bech32: checksum fails

// DormantReserve validates, but no consensus code references it.
const DormantReserve = "demo1mjyr2x906av3sf3k5fplfgwnx8z9dhsll9kdlt" // decoy cosmos/hardcoded-bech32: never referenced from scope

// MsgBurn removes coins from circulation.
type MsgBurn struct {
	Owner  string
	Amount int64
}

// MsgServer handles the supply module's transactions.
type MsgServer interface {
	Burn(ctx roottypes.Context, msg MsgBurn) error
}
