package keeper

import "example.com/minichain/x/token/types"

// Keeper owns the token store and implements types.MsgServer.
type Keeper struct {
	supply map[string]uint64
}

func (k Keeper) Transfer(ctx types.Context, msg types.MsgTransfer) error {
	k.moveCoins(msg.From, msg.To, msg.Amount)
	return nil
}

func (k Keeper) Burn(ctx types.Context, msg types.MsgBurn) error {
	k.burnCoins(msg.From, msg.Amount)
	return nil
}

func (k Keeper) moveCoins(from, to string, amount uint64) {
	k.supply[from] -= amount
	k.supply[to] += amount
}

func (k Keeper) burnCoins(from string, amount uint64) {
	k.supply[from] -= amount
}
