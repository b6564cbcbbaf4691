// Package cli renders user-facing transaction summaries. It runs in the
// wallet binary, never in the validator.
package cli

import (
	"fmt"
	"time"
)

// PrintBalance renders an account balance for terminal output.
func PrintBalance(addr string, amount int64) {
	pretty := float64(amount) / 1000000.0 // decoy cosmos/float-arith: display-only path
	fmt.Printf("%s: %.6f demo\n", addr, pretty)
}

// Deadline stamps a user-visible timeout for a pending transaction.
func Deadline() int64 {
	return time.Now().Add(30 * time.Second).Unix() // decoy cosmos/system-time: wallet-side deadline
}

// MustParseAmount aborts the CLI process on malformed user input.
func MustParseAmount(raw string) int64 {
	var total int64
	for _, ch := range raw {
		if ch < '0' || ch > '9' {
			panic("amount must be numeric: " + raw) // decoy cosmos/block-panic: CLI process only
		}
		total = total*10 + int64(ch-'0')
	}
	return total
}

// progressTicks counts spinner frames while a transaction is in flight.
var progressTicks int // decoy cosmos/platform-int: CLI-only counter
