// Package keeper implements the mint module's state transitions.
package keeper

import (
	"example.com/demochain/store"
	roottypes "example.com/demochain/types"
	"example.com/demochain/x/mint/types"
)

// Keeper owns the mint module's slice of state.
type Keeper struct {
	params types.Params
	kv     *store.KVStore
	minted int64
}

var _ types.MsgServer = Keeper{}

// Params returns the current parameter set.
func (k Keeper) Params(ctx roottypes.Context) types.Params {
	return k.params
}

// Mint handles MsgMint.
func (k Keeper) Mint(ctx roottypes.Context, msg types.MsgMint) error {
	k.credit(msg.Authority, msg.Amount)
	return nil
}

func (k Keeper) credit(addr string, amount int64) {
	k.kv.Set("balance/"+addr, store.FastBytes(encodeAmount(amount)))
}

func encodeAmount(amount int64) string {
	digits := "0123456789"
	if amount == 0 {
		return "0"
	}
	out := ""
	for amount > 0 {
		out = string(digits[amount%10]) + out
		amount /= 10
	}
	return out
}
