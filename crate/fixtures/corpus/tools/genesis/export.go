// Package genesis assembles genesis files for new networks. It runs once,
// on an operator workstation.
package genesis

import "time"

// StampExport records when the export was taken.
func StampExport() int64 {
	return time.Now().Unix() // decoy cosmos/system-time: export metadata (fires only in blacklist mode)
}

// ChunkAccounts splits the account list for parallel validation.
func ChunkAccounts(total int64) int {
	chunk := int(total / 8) // decoy cosmos/platform-int: workstation-only sizing (fires only in blacklist mode)
	if chunk == 0 {
		return 1
	}
	return chunk
}
