"""The walkthrough sentences the golden files are pinned on."""

CREDIT_LOAN = ("In October 2019, the Company increased the borrowing capacity on the "
               "revolving credit loan by $33,000 increasing the available credit "
               "facility from $60,000 to $93,000")
LOAN_PENALTY = ("If the loan is paid during months 13-24 or 25-36 and then a penalty "
                "of 2% and 1%, respectively, of the loan balance will be charged on "
                "the date of repayment.")
LEASE_TERM = ("The weighted-average remaining lease term and discount rate related to "
              "the Company's lease liabilities as of September 26, 2020 were 10.3 "
              "years and 2.0%, respectively")
REFINANCE = "In connection with the refinance we reduced the loan amount by $6.8 million."

ALL = {"credit_loan": CREDIT_LOAN, "loan_penalty": LOAN_PENALTY,
       "lease_term": LEASE_TERM, "refinance": REFINANCE}
