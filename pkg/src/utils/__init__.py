# Utils Module - Shared Helper Functions
