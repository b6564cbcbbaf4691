// Package keeper tracks the total coin supply.
package keeper

import (
	roottypes "example.com/demochain/types"
	"example.com/demochain/x/supply/types"
)

// Keeper owns the supply counters.
type Keeper struct {
	total    int64
	balances map[string]int64
}

var _ types.MsgServer = Keeper{}

// Burn handles MsgBurn: the remainder under the burn granularity is swept to
// the module treasury.
func (k Keeper) Burn(ctx roottypes.Context, msg types.MsgBurn) error {
	remainder := msg.Amount % 1000
	k.reduce(msg.Amount - remainder)
	k.credit(types.ModuleTreasury, remainder)
	return nil
}

func (k Keeper) reduce(amount int64) {
	if k.total < amount {
		// decoy cosmos/block-panic: only reachable through a tx handler,
		// and the tx runner recovers panics instead of halting the chain.
		panic("supply underflow: burn exceeds circulating supply")
	}
	k.total -= amount
}

func (k Keeper) credit(addr string, amount int64) {
	k.balances[addr] += amount
}

// Seed writes the genesis supply. Only InitChain calls it, so it sits
// outside the per-block surface by construction.
func (k Keeper) Seed(ctx roottypes.Context) {
	if k.total != 0 {
		panic("genesis may only run once") // decoy cosmos/block-panic: InitChain-only path
	}
	k.total = 1000000000
}
