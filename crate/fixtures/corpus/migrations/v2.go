// Package migrations rewrites state between store versions. Migrations run
// offline under an operator command, not inside block execution.
package migrations

// RenameDenoms rewrites every balance key under the new denom naming.
func RenameDenoms(balances map[string]int64, renames map[string]string) map[string]int64 {
	out := make(map[string]int64, len(balances))
	for denom, amount := range balances { // decoy cosmos/map-iteration: offline rewrite (fires only in blacklist mode)
		if renamed, ok := renames[denom]; ok {
			out[renamed] = amount
		} else {
			out[denom] = amount
		}
	}
	return out
}

// CountEntries tallies migrated rows for the operator report.
func CountEntries(balances map[string]int64) string {
	var rows int // decoy cosmos/platform-int: operator-report counter (fires only in blacklist mode)
	for range balances {
		rows++
	}
	if rows > 0 {
		return "migrated"
	}
	return "empty"
}
