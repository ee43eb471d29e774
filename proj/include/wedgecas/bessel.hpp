#pragma once

// Modified Bessel functions I_n, K_n and first derivatives for non-negative
// integer orders, plus exponentially scaled variants and whole-sequence
// product tables I_n(a) K_n(b) that stay finite far beyond the range where
// the individual factors under/overflow.
//
// Order 0 and 1 use the SLATEC FNLIB Chebyshev expansions (Fullerton's
// public-domain tables, via netlib). Higher orders: upward recurrence for K
// (dominant solution, stable) and Miller downward recurrence for I,
// normalized by I_0. Binary exponent ladders keep mantissas in range.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wedgecas/errors.hpp"

namespace wedgecas {

struct BesselEval {
    int order = 0;
    double x = 0.0;
    double i = 0.0;   // I_nu(x)
    double k = 0.0;   // K_nu(x)
    double di = 0.0;  // I'_nu(x)
    double dk = 0.0;  // K'_nu(x)
};

namespace detail {

inline double cheb_eval(const double* cs, int n, double x) {
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    const double twox = 2.0 * x;
    for (int i = n - 1; i >= 0; --i) {
        b2 = b1;
        b1 = b0;
        b0 = twox * b1 - b2 + cs[i];
    }
    return 0.5 * (b0 - b2);
}

// Series for BI0, interval [0, 9]
inline constexpr double bi0cs[18] = {
    -0.07660547252839144951081894976243285,
    1.927337953993808269952408750881196,
    0.2282644586920301338937029292330415,
    0.01304891466707290428079334210691888,
    4.344270900816487451378682681026107e-4,
    9.422657686001934663923171744118766e-6,
    1.434006289510691079962091878179957e-7,
    1.613849069661749069915419719994611e-9,
    1.396650044535669699495092708142522e-11,
    9.579451725505445344627523171893333e-14,
    5.333981859862502131015107744e-16,
    2.458716088437470774696785919999999e-18,
    9.535680890248770026944341333333333e-21,
    3.154382039721427336789333333333333e-23,
    9.004564101094637431466666666666666e-26,
    2.240647369123670016e-28,
    4.903034603242837333333333333333333e-31,
    9.508172606122666666666666666666666e-34};
// Series for AI0, interval [0.125, 0.33333]
inline constexpr double ai0cs[46] = {
    0.07575994494023795942729872037438,
    0.007591380810823345507292978733204,
    4.153131338923750501863197491382e-4,
    1.07007646343907307358242970217e-5,
    -7.90117997921289466075031948573e-6,
    -7.826143501438752269788989806909e-7,
    2.783849942948870806381185389857e-7,
    8.252472600612027191966829133198e-9,
    -1.204463945520199179054960891103e-8,
    1.559648598506076443612287527928e-9,
    2.292556367103316543477254802857e-10,
    -1.191622884279064603677774234478e-10,
    1.757854916032409830218331247743e-11,
    1.128224463218900517144411356824e-12,
    -1.146848625927298877729633876982e-12,
    2.715592054803662872643651921606e-13,
    -2.415874666562687838442475720281e-14,
    -6.084469888255125064606099639224e-15,
    3.145705077175477293708360267303e-15,
    -7.172212924871187717962175059176e-16,
    7.874493403454103396083909603327e-17,
    1.004802753009462402345244571839e-17,
    -7.56689536535053485342843588881e-18,
    2.150380106876119887812051287845e-18,
    -3.754858341830874429151584452608e-19,
    2.354065842226992576900757105322e-20,
    1.11466761204792853022637335511e-20,
    -5.398891884396990378696779322709e-21,
    1.439598792240752677042858404522e-21,
    -2.591916360111093406460818401962e-22,
    2.23813318399858390743409229824e-23,
    5.250672575364771172772216831999e-24,
    -3.249904138533230784173432285866e-24,
    9.9242141032050379278572847104e-25,
    -2.164992254244669523146554299733e-25,
    3.233609471943594083973332991999e-26,
    -1.184620207396742489824733866666e-27,
    -1.281671853950498650548338687999e-27,
    5.827015182279390511605568853333e-28,
    -1.668222326026109719364501503999e-28,
    3.6253095105415699757006848e-29,
    -5.733627999055713589945958399999e-30,
    3.736796722063098229642581333333e-31,
    1.602073983156851963365512533333e-31,
    -8.700424864057229884522495999999e-32,
    2.741320937937481145603413333333e-32};
// Series for AI02, interval [0, 0.125]
inline constexpr double ai02cs[69] = {
    0.0544904110141088316078960962268,
    0.003369116478255694089897856629799,
    6.889758346916823984262639143011e-5,
    2.891370520834756482966924023232e-6,
    2.048918589469063741827605340931e-7,
    2.266668990498178064593277431361e-8,
    3.396232025708386345150843969523e-9,
    4.940602388224969589104824497835e-10,
    1.188914710784643834240845251963e-11,
    -3.149916527963241364538648629619e-11,
    -1.321581184044771311875407399267e-11,
    -1.794178531506806117779435740269e-12,
    7.180124451383666233671064293469e-13,
    3.852778382742142701140898017776e-13,
    1.540086217521409826913258233397e-14,
    -4.150569347287222086626899720156e-14,
    -9.554846698828307648702144943125e-15,
    3.811680669352622420746055355118e-15,
    1.772560133056526383604932666758e-15,
    -3.425485619677219134619247903282e-16,
    -2.827623980516583484942055937594e-16,
    3.461222867697461093097062508134e-17,
    4.465621420296759999010420542843e-17,
    -4.830504485944182071255254037954e-18,
    -7.233180487874753954562272409245e-18,
    9.92147541217369859888046093981e-19,
    1.193650890845982085504399499242e-18,
    -2.488709837150807235720544916602e-19,
    -1.938426454160905928984697811326e-19,
    6.444656697373443868783019493949e-20,
    2.886051596289224326481713830734e-20,
    -1.601954907174971807061671562007e-20,
    -3.270815010592314720891935674859e-21,
    3.686932283826409181146007239393e-21,
    1.268297648030950153013595297109e-23,
    -7.549825019377273907696366644101e-22,
    1.502133571377835349637127890534e-22,
    1.265195883509648534932087992483e-22,
    -6.100998370083680708629408916002e-23,
    -1.268809629260128264368720959242e-23,
    1.661016099890741457840384874905e-23,
    -1.585194335765885579379705048814e-24,
    -3.302645405968217800953817667556e-24,
    1.313580902839239781740396231174e-24,
    3.689040246671156793314256372804e-25,
    -4.210141910461689149219782472499e-25,
    4.79195459108286578063171401373e-26,
    8.459470390221821795299717074124e-26,
    -4.03980094087283249314607937181e-26,
    -6.434714653650431347301008504695e-27,
    1.225743398875665990344647369905e-26,
    -2.934391316025708923198798211754e-27,
    -1.961311309194982926203712057289e-27,
    1.503520374822193424162299003098e-27,
    -9.588720515744826552033863882069e-29,
    -3.483339380817045486394411085114e-28,
    1.690903610263043673062449607256e-28,
    1.982866538735603043894001157188e-29,
    -5.317498081491816214575830025284e-29,
    1.803306629888392946235014503901e-29,
    6.213093341454893175884053112422e-30,
    -7.69218929277216186320072806673e-30,
    1.858252826111702542625560165963e-30,
    1.237585142281395724899271545541e-30,
    -1.102259120409223803217794787792e-30,
    1.886287118039704490077874479431e-31,
    2.16019687224365891314903141406e-31,
    -1.605454124919743200584465949655e-31,
    1.965352984594290603938848073318e-32};
// Series for BI1, interval [0, 9]
inline constexpr double bi1cs[17] = {
    -0.0019717132610998597316138503218149,
    0.40734887667546480608155393652014,
    0.034838994299959455866245037783787,
    0.0015453945563001236038598401058489,
    4.188852109837778412945883200412e-5,
    7.6490267648362114741959703966069e-7,
    1.0042493924741178689179808037238e-8,
    9.9322077919238106481371298054863e-11,
    7.6638017918447637275200171681349e-13,
    4.741418923816739498038809194816e-15,
    2.4041144040745181799863172032e-17,
    1.0171505007093713649121100799999e-19,
    3.6450935657866949458491733333333e-22,
    1.1205749502562039344810666666666e-24,
    2.9875441934468088832e-27,
    6.9732310939194709333333333333333e-30,
    1.43679482206208e-32};
// Series for AI1, interval [0.125, 0.33333]
inline constexpr double ai1cs[46] = {
    -0.02846744181881478674100372468307,
    -0.01922953231443220651044448774979,
    -6.115185857943788982256249917785e-4,
    -2.069971253350227708882823777979e-5,
    8.585619145810725565536944673138e-6,
    1.04949824671159086251745399786e-6,
    -2.918338918447902202093432326697e-7,
    -1.559378146631739000160680969077e-8,
    1.318012367144944705525302873909e-8,
    -1.448423418183078317639134467815e-9,
    -2.90851224399314209482504099301e-10,
    1.266388917875382387311159690403e-10,
    -1.66494777291922067062417839858e-11,
    -1.666653644609432976095937154999e-12,
    1.242602414290768265232168472017e-12,
    -2.731549379672432397251461428633e-13,
    2.023947881645803780700262688981e-14,
    7.307950018116883636198698126123e-15,
    -3.332905634404674943813778617133e-15,
    7.17534655851295374354225466567e-16,
    -6.982530324796256355850629223656e-17,
    -1.299944201562760760060446080587e-17,
    8.12094286424279889205467834286e-18,
    -2.194016207410736898156266643783e-18,
    3.630516170029654848279860932334e-19,
    -1.695139772439104166306866790399e-20,
    -1.288184829897907807116882538222e-20,
    5.694428604967052780109991073109e-21,
    -1.459597009090480056545509900287e-21,
    2.514546010675717314084691334485e-22,
    -1.844758883139124818160400029013e-23,
    -6.339760596227948641928609791999e-24,
    3.46144110203101111110814662656e-24,
    -1.017062335371393547596541023573e-24,
    2.149877147090431445962500778666e-25,
    -3.045252425238676401746206173866e-26,
    5.238082144721285982177634986666e-28,
    1.443583107089382446416789503999e-27,
    -6.121302074890042733200670719999e-28,
    1.700011117467818418349189802666e-28,
    -3.596589107984244158535215786666e-29,
    5.448178578948418576650513066666e-30,
    -2.731831789689084989162564266666e-31,
    -1.858905021708600715771903999999e-31,
    9.212682974513933441127765333333e-32,
    -2.813835155653561106370833066666e-32};
// Series for AI12, interval [0, 0.125]
inline constexpr double ai12cs[69] = {
    0.02857623501828012047449845948469,
    -0.009761097491361468407765164457302,
    -1.105889387626237162912569212775e-4,
    -3.882564808877690393456544776274e-6,
    -2.512236237870208925294520022121e-7,
    -2.631468846889519506837052365232e-8,
    -3.835380385964237022045006787968e-9,
    -5.589743462196583806868112522229e-10,
    -1.897495812350541234498925033238e-11,
    3.252603583015488238555080679949e-11,
    1.412580743661378133163366332846e-11,
    2.03562854414708950722452613684e-12,
    -7.198551776245908512092589890446e-13,
    -4.083551111092197318228499639691e-13,
    -2.101541842772664313019845727462e-14,
    4.272440016711951354297788336997e-14,
    1.042027698412880276417414499948e-14,
    -3.814403072437007804767072535396e-15,
    -1.880354775510782448512734533963e-15,
    3.308202310920928282731903352405e-16,
    2.962628997645950139068546542052e-16,
    -3.209525921993423958778373532887e-17,
    -4.650305368489358325571282818979e-17,
    4.414348323071707949946113759641e-18,
    7.517296310842104805425458080295e-18,
    -9.314178867326883375684847845157e-19,
    -1.242193275194890956116784488697e-18,
    2.414276719454848469005153902176e-19,
    2.026944384053285178971922860692e-19,
    -6.394267188269097787043919886811e-20,
    -3.049812452373095896084884503571e-20,
    1.612841851651480225134622307691e-20,
    3.56091396430992505451027090462e-21,
    -3.752017947936439079666828003246e-21,
    -5.787037427074799345951982310741e-23,
    7.759997511648161961982369632092e-22,
    -1.452790897202233394064459874085e-22,
    -1.318225286739036702121922753374e-22,
    6.116654862903070701879991331717e-23,
    1.376279762427126427730243383634e-23,
    -1.690837689959347884919839382306e-23,
    1.430596088595433153987201085385e-24,
    3.409557828090594020405367729902e-24,
    -1.309457666270760227845738726424e-24,
    -3.940706411240257436093521417557e-25,
    4.277137426980876580806166797352e-25,
    -4.424634830982606881900283123029e-26,
    -8.734113196230714972115309788747e-26,
    4.045401335683533392143404142428e-26,
    7.067100658094689465651607717806e-27,
    -1.249463344565105223002864518605e-26,
    2.867392244403437032979483391426e-27,
    2.04429289250429267028177957421e-27,
    -1.518636633820462568371346802911e-27,
    8.110181098187575886132279107037e-29,
    3.58037935477358609112717370327e-28,
    -1.692929018927902509593057175448e-28,
    -2.222902499702427639067758527774e-29,
    5.424535127145969655048600401128e-29,
    -1.787068401578018688764912993304e-29,
    -6.56547906872281493882392943788e-30,
    7.807013165061145280922067706839e-30,
    -1.816595260668979717379333152221e-30,
    -1.287704952660084820376875598959e-30,
    1.114548172988164547413709273694e-30,
    -1.808343145039336939159368876687e-31,
    -2.231677718203771952232448228939e-31,
    1.619029596080341510617909803614e-31,
    -1.83407990880494141390130843921e-32};
// Series for BK0, interval [0, 4]
inline constexpr double bk0cs[16] = {
    -0.0353273932339027687201140060063153,
    0.344289899924628486886344927529213,
    0.0359799365153615016265721303687231,
    0.00126461541144692592338479508673447,
    2.28621210311945178608269830297585e-5,
    2.53479107902614945730790013428354e-7,
    1.90451637722020885897214059381366e-9,
    1.03496952576336245851008317853089e-11,
    4.25981614279108257652445327170133e-14,
    1.3744654358807508969423832544e-16,
    3.57089652850837359099688597333333e-19,
    7.63164366011643737667498666666666e-22,
    1.36542498844078185908053333333333e-24,
    2.07527526690666808319999999999999e-27,
    2.7128142180729856e-30,
    3.08259388791466666666666666666666e-33};
// Series for AK0, interval [0.125, 0.5]
inline constexpr double ak0cs[38] = {
    -0.07643947903327941424082978270088,
    -0.02235652605699819052023095550791,
    7.734181154693858235300618174047e-4,
    -4.281006688886099464452146435416e-5,
    3.08170017386297474365001482666e-6,
    -2.639367222009664974067448892723e-7,
    2.563713036403469206294088265742e-8,
    -2.742705549900201263857211915244e-9,
    3.169429658097499592080832873403e-10,
    -3.902353286962184141601065717962e-11,
    5.068040698188575402050092127286e-12,
    -6.889574741007870679541713557984e-13,
    9.744978497825917691388201336831e-14,
    -1.427332841884548505389855340122e-14,
    2.156412571021463039558062976527e-15,
    -3.34965425514956277218878205853e-16,
    5.335260216952911692145280392601e-17,
    -8.693669980890753807639622378837e-18,
    1.446404347862212227887763442346e-18,
    -2.452889825500129682404678751573e-19,
    4.2337545262321715728217063424e-20,
    -7.427946526454464195695341294933e-21,
    1.3231505293926668662779674624e-21,
    -2.390587164739649451335981465599e-22,
    4.376827585923226140165712554666e-23,
    -8.113700607345118059339011413333e-24,
    1.521819913832172958310378154666e-24,
    -2.886041941483397770235958613333e-25,
    5.530620667054717979992610133333e-26,
    -1.070377329249898728591633066666e-26,
    2.091086893142384300296328533333e-27,
    -4.121713723646203827410261333333e-28,
    8.19348397112130764013568e-29,
    -1.642000275459297726780757333333e-29,
    3.316143281480227195890346666666e-30,
    -6.746863644145295941085866666666e-31,
    1.382429146318424677635413333333e-31,
    -2.851874167359832570811733333333e-32};
// Series for AK02, interval [0, 0.125]
inline constexpr double ak02cs[33] = {
    -0.01201869826307592239839346212452,
    -0.009174852691025695310652561075713,
    1.444550931775005821048843878057e-4,
    -4.013614175435709728671021077879e-6,
    1.567831810852310672590348990333e-7,
    -7.77011043852173771031579975446e-9,
    4.611182576179717882533130529586e-10,
    -3.158592997860565770526665803309e-11,
    2.435018039365041127835887814329e-12,
    -2.074331387398347897709853373506e-13,
    1.925787280589917084742736504693e-14,
    -1.927554805838956103600347182218e-15,
    2.062198029197818278285237869644e-16,
    -2.341685117579242402603640195071e-17,
    2.805902810643042246815178828458e-18,
    -3.530507631161807945815482463573e-19,
    4.645295422935108267424216337066e-20,
    -6.368625941344266473922053461333e-21,
    9.0695213109865155676223488e-22,
    -1.337974785423690739845005311999e-22,
    2.03983602185995231552208896e-23,
    -3.207027481367840500060869973333e-24,
    5.189744413662309963626359466666e-25,
    -8.629501497540572192964607999999e-26,
    1.4721611831025598552080384e-26,
    -2.573069023867011283812351999999e-27,
    4.60177408664351658737664e-28,
    -8.411555324201093737130666666666e-29,
    1.569806306635368939301546666666e-29,
    -2.988226453005757788979199999999e-30,
    5.796831375216836520618666666666e-31,
    -1.145035994347681332155733333333e-31,
    2.301266594249682802005333333333e-32};
// Series for BK1, interval [0, 4]
inline constexpr double bk1cs[16] = {
    0.025300227338947770532531120868533,
    -0.35315596077654487566723831691801,
    -0.12261118082265714823479067930042,
    -0.0069757238596398643501812920296083,
    -1.7302889575130520630176507368979e-4,
    -2.4334061415659682349600735030164e-6,
    -2.2133876307347258558315252545126e-8,
    -1.4114883926335277610958330212608e-10,
    -6.6669016941993290060853751264373e-13,
    -2.4274498505193659339263196864853e-15,
    -7.023863479386287597178379712e-18,
    -1.6543275155100994675491029333333e-20,
    -3.2338347459944491991893333333333e-23,
    -5.3312750529265274999466666666666e-26,
    -7.5130407162157226666666666666666e-29,
    -9.1550857176541866666666666666666e-32};
// Series for AK1, interval [0.125, 0.5]
inline constexpr double ak1cs[38] = {
    0.27443134069738829695257666227266,
    0.07571989953199367817089237814929,
    -0.0014410515564754061229853116175625,
    6.6501169551257479394251385477036e-5,
    -4.3699847095201407660580845089167e-6,
    3.5402774997630526799417139008534e-7,
    -3.3111637792932920208982688245704e-8,
    3.4459775819010534532311499770992e-9,
    -3.8989323474754271048981937492758e-10,
    4.7208197504658356400947449339005e-11,
    -6.047835662875356234537359156289e-12,
    8.1284948748658747888193837985663e-13,
    -1.1386945747147891428923915951042e-13,
    1.654035840846228232597294820509e-14,
    -2.4809025677068848221516010440533e-15,
    3.8292378907024096948429227299157e-16,
    -6.0647341040012418187768210377386e-17,
    9.8324256232648616038194004650666e-18,
    -1.6284168738284380035666620115626e-18,
    2.7501536496752623718284120337066e-19,
    -4.7289666463953250924281069568e-20,
    8.2681500028109932722392050346666e-21,
    -1.4681405136624956337193964885333e-21,
    2.6447639269208245978085894826666e-22,
    -4.82901575648563878979698688e-23,
    8.9293020743610130180656332799999e-24,
    -1.6708397168972517176997751466666e-24,
    3.1616456034040694931368618666666e-25,
    -6.0462055312274989106506410666666e-26,
    1.1678798942042732700718421333333e-26,
    -2.277374158265399623286784e-27,
    4.4811097300773675795305813333333e-28,
    -8.8932884769020194062336e-29,
    1.7794680018850275131392e-29,
    -3.5884555967329095821994666666666e-30,
    7.2906290492694257991679999999999e-31,
    -1.4918449845546227073024e-31,
    3.0736573872934276300799999999999e-32};
// Series for AK12, interval [0, 0.125]
inline constexpr double ak12cs[33] = {
    0.06379308343739001036600488534102,
    0.02832887813049720935835030284708,
    -2.475370673905250345414545566732e-4,
    5.771972451607248820470976625763e-6,
    -2.068939219536548302745533196552e-7,
    9.739983441381804180309213097887e-9,
    -5.585336140380624984688895511129e-10,
    3.732996634046185240221212854731e-11,
    -2.825051961023225445135065754928e-12,
    2.372019002484144173643496955486e-13,
    -2.176677387991753979268301667938e-14,
    2.157914161616032453939562689706e-15,
    -2.290196930718269275991551338154e-16,
    2.582885729823274961919939565226e-17,
    -3.07675264126846318762109817344e-18,
    3.851487721280491597094896844799e-19,
    -5.0447948976415289771172825088e-20,
    6.888673850418544237018292223999e-21,
    -9.77504154195011830300213248e-22,
    1.437416218523836461001659733333e-22,
    -2.185059497344347373499733333333e-23,
    3.4262456218092206316453888e-24,
    -5.531064394246408232501248e-25,
    9.176601505685995403782826666666e-26,
    -1.562287203618024911448746666666e-26,
    2.725419375484333132349439999999e-27,
    -4.865674910074827992378026666666e-28,
    8.879388552723502587357866666666e-29,
    -1.654585918039257548936533333333e-29,
    3.145111321357848674303999999999e-30,
    -6.092998312193127612416e-31,
    1.202021939369815834623999999999e-31,
    -2.412930801459408841386666666666e-32};

inline void require_positive(double x, const char* who) {
    if (!(x > 0.0)) throw DomainError(std::string(who) + ": argument must be positive");
}

}  // namespace detail

// e^{-x} I_0(x)
inline double bessel_i0_scaled(double x) {
    detail::require_positive(x, "bessel_i0_scaled");
    if (x <= 3.0) {
        const double xsml = std::sqrt(std::numeric_limits<double>::epsilon() * 4.5);
        if (x < xsml) return (1.0 - x) + x * x * (0.5 + x * (-1.0 / 6.0));
        return std::exp(-x) * (2.75 + detail::cheb_eval(detail::bi0cs, 11, x * x / 4.5 - 1.0));
    }
    if (x <= 8.0)
        return (detail::cheb_eval(detail::ai0cs, 23, (48.0 / x - 11.0) / 5.0) + 0.375) /
               std::sqrt(x);
    return (detail::cheb_eval(detail::ai02cs, 25, 16.0 / x - 1.0) + 0.375) / std::sqrt(x);
}

// e^{-x} I_1(x)
inline double bessel_i1_scaled(double x) {
    detail::require_positive(x, "bessel_i1_scaled");
    if (x <= 3.0) {
        const double xsml = std::sqrt(std::numeric_limits<double>::epsilon() * 4.5);
        if (x < xsml) return std::exp(-x) * 0.5 * x;
        return std::exp(-x) * (x * (detail::cheb_eval(detail::bi1cs, 11, x * x / 4.5 - 1.0) + 0.875));
    }
    if (x <= 8.0)
        return (detail::cheb_eval(detail::ai1cs, 23, (48.0 / x - 11.0) / 5.0) + 0.375) /
               std::sqrt(x);
    return (detail::cheb_eval(detail::ai12cs, 25, 16.0 / x - 1.0) + 0.375) / std::sqrt(x);
}

inline double bessel_i0(double x) {
    detail::require_positive(x, "bessel_i0");
    if (x > 705.0) throw OverflowError("bessel_i0: overflow, use bessel_i0_scaled");
    if (x <= 3.0) return 2.75 + detail::cheb_eval(detail::bi0cs, 11, x * x / 4.5 - 1.0);
    return std::exp(x) * bessel_i0_scaled(x);
}

inline double bessel_i1(double x) {
    detail::require_positive(x, "bessel_i1");
    if (x > 705.0) throw OverflowError("bessel_i1: overflow, use bessel_i1_scaled");
    if (x <= 3.0) {
        const double xsml = std::sqrt(std::numeric_limits<double>::epsilon() * 4.5);
        if (x < xsml) return 0.5 * x;
        return x * (detail::cheb_eval(detail::bi1cs, 11, x * x / 4.5 - 1.0) + 0.875);
    }
    return std::exp(x) * bessel_i1_scaled(x);
}

// e^{x} K_0(x)
inline double bessel_k0_scaled(double x) {
    detail::require_positive(x, "bessel_k0_scaled");
    if (x <= 2.0) {
        const double xsml = 2.0 * std::sqrt(std::numeric_limits<double>::epsilon());
        const double y = (x > xsml) ? x * x : 0.0;
        return std::exp(x) * (-std::log(0.5 * x) * bessel_i0(x) - 0.25 +
                              detail::cheb_eval(detail::bk0cs, 11, 0.5 * y - 1.0));
    }
    if (x <= 8.0)
        return (detail::cheb_eval(detail::ak0cs, 18, (16.0 / x - 5.0) / 3.0) + 1.25) /
               std::sqrt(x);
    return (detail::cheb_eval(detail::ak02cs, 14, 16.0 / x - 1.0) + 1.25) / std::sqrt(x);
}

// e^{x} K_1(x)
inline double bessel_k1_scaled(double x) {
    detail::require_positive(x, "bessel_k1_scaled");
    if (x <= 2.0) {
        if (x < 1.01 * std::numeric_limits<double>::min())
            throw OverflowError("bessel_k1_scaled: x so small K1 overflows");
        const double xsml = 2.0 * std::sqrt(std::numeric_limits<double>::epsilon());
        const double y = (x > xsml) ? x * x : 0.0;
        return std::exp(x) * (std::log(0.5 * x) * bessel_i1(x) +
                              (0.75 + detail::cheb_eval(detail::bk1cs, 11, 0.5 * y - 1.0)) / x);
    }
    if (x <= 8.0)
        return (detail::cheb_eval(detail::ak1cs, 18, (16.0 / x - 5.0) / 3.0) + 1.25) /
               std::sqrt(x);
    return (detail::cheb_eval(detail::ak12cs, 14, 16.0 / x - 1.0) + 1.25) / std::sqrt(x);
}

// K_0(x). Monotonically decreasing; ~ -ln(x/2) - gamma as x -> 0+.
inline double bessel_k0(double x) {
    detail::require_positive(x, "bessel_k0");
    if (x <= 2.0) {
        const double xsml = 2.0 * std::sqrt(std::numeric_limits<double>::epsilon());
        const double y = (x > xsml) ? x * x : 0.0;
        return -std::log(0.5 * x) * bessel_i0(x) - 0.25 +
               detail::cheb_eval(detail::bk0cs, 11, 0.5 * y - 1.0);
    }
    if (x > 745.0) return 0.0;  // below double range
    return std::exp(-x) * bessel_k0_scaled(x);
}

inline double bessel_k1(double x) {
    detail::require_positive(x, "bessel_k1");
    if (x <= 2.0) {
        if (x < 1.01 * std::numeric_limits<double>::min())
            throw OverflowError("bessel_k1: x so small K1 overflows");
        const double xsml = 2.0 * std::sqrt(std::numeric_limits<double>::epsilon());
        const double y = (x > xsml) ? x * x : 0.0;
        return std::log(0.5 * x) * bessel_i1(x) +
               (0.75 + detail::cheb_eval(detail::bk1cs, 11, 0.5 * y - 1.0)) / x;
    }
    if (x > 745.0) return 0.0;
    return std::exp(-x) * bessel_k1_scaled(x);
}

namespace detail {

// Sequence of scaled values with per-order binary exponents:
// true value = val[n] * 2^exp2[n], mantissas frexp-normalized to [0.5, 1)
// so cross-products of two ladders cannot overflow.
struct ScaledLadder {
    std::vector<double> val;
    std::vector<int> exp2;

    void normalize() {
        for (size_t n = 0; n < val.size(); ++n) {
            if (val[n] == 0.0) {
                exp2[n] = 0;
                continue;
            }
            int e = 0;
            val[n] = std::frexp(val[n], &e);
            exp2[n] += e;
        }
    }
};

inline constexpr int kLadderBits = 600;
inline constexpr double kLadderUp = 0x1p600;
inline constexpr double kLadderDown = 0x1p-600;

// e^{-x} I_n(x) for n = 0..nmax via Miller downward recurrence normalized
// by I_0. Start order sits far enough above both nmax and x that the trial
// values' contamination is below double rounding.
inline ScaledLadder i_scaled_sequence(int nmax, double x) {
    require_positive(x, "i_scaled_sequence");
    const int top = std::max(nmax, static_cast<int>(x)) + 40 +
                    static_cast<int>(std::sqrt(40.0 * std::max<double>(nmax, x)));
    std::vector<double> raw(nmax + 1);
    std::vector<int> rawg(nmax + 1);

    double wp = 0.0;        // w_{k+1}
    double w = 1e-280;      // w_k (arbitrary tiny seed)
    int g = 0;              // accumulators hold c * I_k * 2^g
    for (int k = top; k >= 1; --k) {
        const double wm = wp + (2.0 * k / x) * w;
        wp = w;
        w = wm;
        if (std::abs(w) > kLadderUp) {
            w *= kLadderDown;
            wp *= kLadderDown;
            g -= kLadderBits;
        }
        if (k - 1 <= nmax) {
            raw[k - 1] = w;
            rawg[k - 1] = g;
        }
    }

    const double i0e = bessel_i0_scaled(x);
    ScaledLadder out;
    out.val.resize(nmax + 1);
    out.exp2.resize(nmax + 1);
    int e0 = 0;
    const double m0 = std::frexp(raw[0], &e0);
    for (int n = 0; n <= nmax; ++n) {
        int en = 0;
        const double mn = std::frexp(raw[n], &en);
        out.val[n] = (mn / m0) * i0e;
        out.exp2[n] = (rawg[0] - rawg[n]) + (en - e0);
    }
    out.normalize();
    return out;
}

// e^{x} K_n(x) for n = 0..nmax via upward recurrence from K_0, K_1.
inline ScaledLadder k_scaled_sequence(int nmax, double x) {
    require_positive(x, "k_scaled_sequence");
    ScaledLadder out;
    out.val.resize(nmax + 1);
    out.exp2.resize(nmax + 1);
    double km = bessel_k0_scaled(x);
    out.val[0] = km;
    out.exp2[0] = 0;
    if (nmax == 0) {
        out.normalize();
        return out;
    }
    double k = bessel_k1_scaled(x);
    out.val[1] = k;
    out.exp2[1] = 0;
    int g = 0;  // accumulators hold e^x K_n * 2^g
    for (int n = 1; n < nmax; ++n) {
        const double kp = km + (2.0 * n / x) * k;
        km = k;
        k = kp;
        if (std::abs(k) > kLadderUp) {
            k *= kLadderDown;
            km *= kLadderDown;
            g -= kLadderBits;
        }
        out.val[n + 1] = k;
        out.exp2[n + 1] = -g;
    }
    out.normalize();
    return out;
}

// mantissa * 2^e2 * e^s without intermediate under/overflow
inline double combine_exp(double mantissa, int e2, double s) {
    if (mantissa == 0.0) return 0.0;
    constexpr double kLn2 = 0.6931471805599453094;
    const double f = s / kLn2;
    const double fi = std::floor(f);
    if (fi > 2100.0 || e2 + fi > 1100.0) {
        throw OverflowError("bessel product overflow");
    }
    if (e2 + fi < -1120.0) return 0.0;
    return std::ldexp(mantissa * std::exp(s - fi * kLn2), e2 + static_cast<int>(fi));
}

}  // namespace detail

// Products I_nu(a) K_nu(b) and I'_nu(a) K'_nu(b) for nu = 0..nu_max,
// 0 < a <= b. The exponentially small combination is formed from scaled
// factors, so it stays finite wherever the product itself is representable;
// products below double range come back as exact 0.
struct IkProductTable {
    std::vector<double> ik;
    std::vector<double> dik;
};

inline IkProductTable ik_products(int nu_max, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || a > b)
        throw DomainError("ik_products: need 0 < a <= b");
    if (nu_max < 0) throw DomainError("ik_products: nu_max must be >= 0");

    const auto iv = detail::i_scaled_sequence(nu_max + 1, a);
    const auto kv = detail::k_scaled_sequence(nu_max + 1, b);
    const double s = a - b;  // <= 0

    IkProductTable out;
    out.ik.resize(nu_max + 1);
    out.dik.resize(nu_max + 1);
    for (int nu = 0; nu <= nu_max; ++nu) {
        out.ik[nu] = detail::combine_exp(iv.val[nu] * kv.val[nu],
                                         iv.exp2[nu] + kv.exp2[nu], s);
        // I'_nu = I_{nu+1} + (nu/a) I_nu ; K'_nu = -(K_{nu-1} + (nu/b) K_nu)
        const double di = std::ldexp(iv.val[nu + 1], iv.exp2[nu + 1] - iv.exp2[nu]) +
                          (nu / a) * iv.val[nu];
        double dk;
        if (nu == 0) {
            dk = -std::ldexp(kv.val[1], kv.exp2[1] - kv.exp2[0]);
        } else {
            dk = -(std::ldexp(kv.val[nu - 1], kv.exp2[nu - 1] - kv.exp2[nu]) +
                   (nu / b) * kv.val[nu]);
        }
        out.dik[nu] = detail::combine_exp(di * dk, iv.exp2[nu] + kv.exp2[nu], s);
    }
    return out;
}

// e^{-x} I_n(x)
inline double bessel_i_scaled(int order, double x) {
    if (order < 0) throw DomainError("bessel_i_scaled: order must be >= 0");
    if (order == 0) return bessel_i0_scaled(x);
    if (order == 1) return bessel_i1_scaled(x);
    const auto seq = detail::i_scaled_sequence(order, x);
    return std::ldexp(seq.val[order], seq.exp2[order]);
}

// e^{x} K_n(x); throws OverflowError if not representable.
inline double bessel_k_scaled(int order, double x) {
    if (order < 0) throw DomainError("bessel_k_scaled: order must be >= 0");
    if (order == 0) return bessel_k0_scaled(x);
    if (order == 1) return bessel_k1_scaled(x);
    const auto seq = detail::k_scaled_sequence(order, x);
    if (seq.exp2[order] > 1020)
        throw OverflowError("bessel_k_scaled: overflow at order " + std::to_string(order));
    return std::ldexp(seq.val[order], seq.exp2[order]);
}

// I_nu(x), K_nu(x) and first derivatives. Unscaled; throws OverflowError
// where a value exceeds double range (x beyond ~705 for I, or K at large
// order / small argument). True underflow of I at large order comes back
// as 0.
inline BesselEval bessel_ik(int order, double x) {
    if (order < 0) throw DomainError("bessel_ik: order must be >= 0");
    detail::require_positive(x, "bessel_ik");
    if (x > 705.0) throw OverflowError("bessel_ik: I_nu overflows for x > 705");

    BesselEval out;
    out.order = order;
    out.x = x;

    // orders 0 and 1 straight from the Chebyshev kernels; bessel_k0(x) and
    // bessel_ik(0, x).k are the same function call
    if (order == 0) {
        out.i = bessel_i0(x);
        out.k = bessel_k0(x);
        out.di = bessel_i1(x);
        out.dk = -bessel_k1(x);
        return out;
    }
    if (order == 1) {
        out.i = bessel_i1(x);
        out.k = bessel_k1(x);
        out.di = bessel_i0(x) - out.i / x;
        out.dk = -bessel_k0(x) - out.k / x;
        return out;
    }

    const auto iv = detail::i_scaled_sequence(order + 1, x);
    const auto kv = detail::k_scaled_sequence(order + 1, x);

    out.i = detail::combine_exp(iv.val[order], iv.exp2[order], x);
    const double di = std::ldexp(iv.val[order + 1], iv.exp2[order + 1] - iv.exp2[order]) +
                      (order / x) * iv.val[order];
    out.di = detail::combine_exp(di, iv.exp2[order], x);

    out.k = detail::combine_exp(kv.val[order], kv.exp2[order], -x);
    double dk;
    if (order == 0) {
        dk = -std::ldexp(kv.val[1], kv.exp2[1] - kv.exp2[0]);
    } else {
        dk = -(std::ldexp(kv.val[order - 1], kv.exp2[order - 1] - kv.exp2[order]) +
               (order / x) * kv.val[order]);
    }
    out.dk = detail::combine_exp(dk, kv.exp2[order], -x);
    return out;
}

}  // namespace wedgecas
