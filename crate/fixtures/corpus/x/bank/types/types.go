// Package types defines the bank module's messages and config surface.
package types

import roottypes "example.com/demochain/types"

// MsgSend moves coins between two accounts.
type MsgSend struct {
	From   string
	To     string
	Amount int64
}

// MsgServer handles the bank module's transactions.
type MsgServer interface {
	Send(ctx roottypes.Context, msg MsgSend) error
}

// Config carries the address-encoding settings shared with wallets.
type Config struct {
	accountPrefix string
}

// SetBech32PrefixForAccount fixes the account address prefix.
func (c *Config) SetBech32PrefixForAccount(prefix string) {
	c.accountPrefix = prefix
}

// Unused is a scratch type left over from a migration; nothing references
// it, so its width never reaches consensus.
type Unused struct {
	Count uint // decoy cosmos/platform-int: type is never used from scope
}
