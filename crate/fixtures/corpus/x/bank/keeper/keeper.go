// Package keeper implements coin transfers.
package keeper

import (
	"reflect"

	"example.com/demochain/store"
	roottypes "example.com/demochain/types"
	"example.com/demochain/x/bank/types"
)

// Keeper owns account balances.
type Keeper struct {
	kv     *store.KVStore
	config *types.Config
}

var _ types.MsgServer = Keeper{}

// Send handles MsgSend.
func (k Keeper) Send(ctx roottypes.Context, msg types.MsgSend) error {
	if reflect.DeepEqual(msg, types.MsgSend{}) { // want cosmos/unsafe-package
		return nil
	}
	k.ensurePrefix()
	k.move(msg.From, msg.To, msg.Amount)
	return nil
}

// ensurePrefix re-applies the address encoding before writing state.
func (k Keeper) ensurePrefix() {
	k.config.SetBech32PrefixForAccount("demo") // want cosmos/hardcoded-bech32
}

func (k Keeper) move(from, to string, amount int64) {
	k.kv.Set("balance/"+from, store.FastBytes(from))
	k.kv.Set("balance/"+to, store.FastBytes(to))
	_ = amount
}
